#pragma once

#include <optional>
#include <string_view>

namespace qce {

/// Numerical thresholds shared by every module. All values are absolute;
/// eigenvalues of density matrices live in [0, 1] so no rescaling is needed.
struct Tolerances {
    double herm = 1e-8;      // max |A - A^dagger| entry
    double idem = 1e-8;      // max |Q^2 - Q| entry
    double orth = 1e-8;      // orthogonality / completeness of projector families
    double psd = 1e-10;      // most negative eigenvalue accepted (then clamped)
    double trace = 1e-9;     // |tr rho - 1|, |tr Q - rank|
    double cluster = 1e-9;   // eigenvalues closer than this form one block
    double support = 1e-9;   // eigenvalues at or below this count as zero

    /// Named profiles: "default", "strict", "loose".
    static std::optional<Tolerances> profile(std::string_view name);

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

}  // namespace qce
