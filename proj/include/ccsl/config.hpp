#pragma once

#include "ccsl/experiment.hpp"

#include <string>
#include <string_view>

namespace ccsl {

/// Parses one experiment descriptor from the line-oriented config format
/// described in docs/config-format.md. Unknown keys and sections are
/// rejected. Throws ParseError(line, column) for syntax problems and
/// ValidationError(field, constraint) for physically invalid values.
ExperimentDescriptor parse_descriptor(std::string_view text);

/// Writes a descriptor back in the same format. Numbers use 17 significant
/// digits and frequencies are written in rad/s, so parse(serialize(d)) == d.
std::string serialize(const ExperimentDescriptor& d);

}  // namespace ccsl
