// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/json.hpp"

#include <string_view>

namespace lrasgen {

/// Pulls the first top-level JSON array or object out of a model reply.
/// Markdown code fences are stripped and surrounding prose is ignored.
/// Python-style literals (True/False/None, 'single quotes') and trailing
/// commas are tolerated.
/// Throws NoJsonFound.
Json extract_json(std::string_view raw_reply);

} // namespace lrasgen
