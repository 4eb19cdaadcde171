#pragma once

// JSON form of a TransitionMatrix:
//
//   {"schema_version": 1, "n_floors": N,
//    "states": ["1:00", "1:01", ...],
//    "rows": [[[col, "prob"], ...], ...]}
//
// States use chain::to_string labels in enumeration order. Probabilities are
// 17-significant-digit decimal strings so a read-back matrix is bit-identical.

#include <string>
#include <string_view>

#include "dumbwaiter/chain.hpp"

namespace dumbwaiter::chain {

std::string matrix_to_json(const TransitionMatrix& matrix);

/// Throws std::invalid_argument on malformed input, including a states list
/// that disagrees with enumerate_states(n_floors).
TransitionMatrix matrix_from_json(std::string_view text);

}  // namespace dumbwaiter::chain
