#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "permlog/linalg.h"

namespace permlog::cli {

using Json = nlohmann::ordered_json;

/// Serializes with insertion-ordered keys and every floating-point number
/// printed as %.17g, so identical documents give identical bytes.
/// Non-finite numbers become null.
std::string dump_fixed(const Json& doc, int indent = 2);

/// [re, im]
Json to_json(Complex z);
/// Row-major nested arrays of [re, im].
Json to_json(const Matrix& m);
Json to_json(const std::vector<Complex>& values);

}  // namespace permlog::cli
