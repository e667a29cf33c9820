#pragma once

#include "ccsl/experiment.hpp"

#include <string>
#include <vector>

namespace ccsl {

/// Ids of the descriptors compiled into the library, in a fixed order.
std::vector<std::string> list_bundled();

/// A bundled id, or else a path to a config file. Throws Error{NotFound},
/// ParseError or ValidationError.
ExperimentDescriptor load(const std::string& name_or_path);

ExperimentDescriptor load_bundled(const std::string& id);
ExperimentDescriptor load_file(const std::string& path);

/// Every bundled descriptor, in list_bundled() order.
std::vector<ExperimentDescriptor> load_all_bundled();

}  // namespace ccsl
