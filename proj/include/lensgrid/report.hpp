#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lensgrid/complex.hpp"
#include "lensgrid/gradings.hpp"
#include "lensgrid/grid.hpp"
#include "lensgrid/homology.hpp"
#include "lensgrid/s3_oracle.hpp"

namespace lensgrid {

using Json = nlohmann::json;

std::string diagram_hash(const GridDiagram& d);

Json diagram_json(const GridDiagram& d);
Json link_json(const LinkStructure& ls);
Json violations_json(const std::vector<Violation>& v);

struct GradingRow {
  Generator x;
  GradingTriple g;
};

// One row per generator sorted by (S, A, M, generator).
std::vector<GradingRow> grading_rows(const GradingContext& ctx, std::uint64_t cap);
Json gradings_json(const GridDiagram& d, const std::vector<GradingRow>& rows);
std::string gradings_text(const std::vector<GradingRow>& rows);

Json bigraded_json(const Bigraded& ranks);
Json homology_json(const GridDiagram& d, const HomologyTable& t, const SimplicityReport& s);
std::string homology_text(const HomologyTable& t, const SimplicityReport& s);

Json cover_json(const GridDiagram& d, const CoverReport& rep);
std::string cover_text(const CoverReport& rep);

}  // namespace lensgrid
