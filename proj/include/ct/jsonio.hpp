#pragma once

#include <complex>
#include <json.hpp>

#include "ct/rational.hpp"

namespace ct {

// Insertion-ordered JSON keeps report layout deterministic.
using Json = nlohmann::ordered_json;

inline Json json_complex(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

inline Json json_rational(const Rational& q) { return to_string(q); }

} // namespace ct
