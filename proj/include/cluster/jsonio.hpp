#pragma once

// JSON <-> big-integer bridging shared by every serializer: values that fit
// in int64 travel as JSON numbers, anything larger as decimal strings, and
// parsers accept both forms.

#include <json.hpp>

#include <limits>
#include <string>

#include "cluster/errors.hpp"
#include "cluster/ints.hpp"

namespace qcl {

inline nlohmann::json json_int(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return static_cast<std::int64_t>(v);
  return v.str();
}

inline Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw BadInput("not an integer literal: " + j.dump());
    }
  }
  throw BadInput("expected an integer (number or decimal string): " + j.dump());
}

}  // namespace qcl
