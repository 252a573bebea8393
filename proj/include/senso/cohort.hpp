#pragma once

#include <cstdint>
#include <filesystem>

#include "senso/record.hpp"

namespace senso {

struct CohortOptions {
  std::string created_at = "1970-01-01T00:00:00Z";
  bool skip_tutorials = true;
};

// Synthetic participants played by simulated players. With n = 41 the age
// split is 22/17/2 and the gender and education counts follow the published
// demographics table; other sizes scale the same proportions.
Dataset gen_cohort(int n, std::uint64_t seed, const CohortOptions& opts = {});

// records/<id>.json, the CSV exports and dataset.json.
void write_cohort(const Dataset& d, const std::filesystem::path& dir, bool with_records = true);

}  // namespace senso
