// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

namespace lrasgen {

/// Insertion-ordered JSON; every document this library emits relies on it
/// for stable key order.
using Json = nlohmann::ordered_json;

} // namespace lrasgen
