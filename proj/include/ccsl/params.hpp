#pragma once

namespace ccsl {

/// Collapse parameters being constrained.
struct CollapseParams {
    double lambda = 0.0;  // collapse rate, 1/s
    double rc = 1e-7;     // noise correlation length, m

    bool operator==(const CollapseParams&) const = default;
};

/// Returns `p` unchanged when lambda >= 0 and rc > 0 (both finite); throws
/// Error{NegativeLambda} or Error{NonPositiveRc} otherwise.
CollapseParams validate_params(const CollapseParams& p);

/// Throws Error{NonPositiveRc} unless rc is finite and positive.
void validate_rc(double rc);

}  // namespace ccsl
