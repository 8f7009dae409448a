#pragma once

#include "qdiss/errors.hpp"

namespace qdiss {

// Two-qubit depolarizing noise after every RZZ plus a bit-flip per
// state-preparation / measurement / reset event.
struct NoiseModel {
  double p2q = 0.0014;    // depolarizing probability per RZZ
  double p_spam = 0.0035; // flip probability per SPAM event
};

inline void validate(const NoiseModel& n) {
  if (n.p2q < 0.0 || n.p2q > 1.0 || n.p_spam < 0.0 || n.p_spam > 1.0)
    throw ConfigError("noise model: probabilities must lie in [0, 1]");
}

}  // namespace qdiss
