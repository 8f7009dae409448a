#pragma once

namespace qdiss {

// Central numerical tolerances. Values are contracts used across modules;
// tests assert against the same constants.
struct Tolerances {
  double hermitian = 1e-10;       // relative Hermiticity defect
  double unitary = 1e-10;         // ||U'U - I||
  double psd_clamp = 1e-10;       // eigenvalues in [-psd_clamp, 0) are set to 0
  double psd_fail = 1e-8;         // relative negativity that signals a bug
  double trace = 1e-10;           // trace-one defect for density matrices
  double conj_symmetry = 1e-12;   // f(-s) = conj(f(s))
  double abs_zero = 1e-300;       // |f| below this is treated as zero for arg()
};

inline constexpr Tolerances tol{};

}  // namespace qdiss
