#pragma once

#include <json.hpp>

#include "faircfs/data/dataset.hpp"
#include "faircfs/fair/selector.hpp"

namespace faircfs::fair {

// Selection with column names, for the CLI report.
nlohmann::ordered_json to_json(const FairSelection& sel, const data::Dataset& d);

}  // namespace faircfs::fair
