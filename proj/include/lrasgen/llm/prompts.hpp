// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/json.hpp"

#include <string>
#include <string_view>

namespace lrasgen::prompts {

/// Reply shapes shown to the model as the format to follow.
const Json& endpoints_example();
const Json& params_responses_example();
const Json& constraints_example();

/// Step 1: list every endpoint declared in the entry code.
std::string endpoints(std::string_view endpoint_code);

/// Step 2: parameters and responses of one handler, given the full bundle.
std::string params_responses(std::string_view endpoint_code, std::string_view method_name);

/// Step 3: constraints of one parameter of one handler.
std::string constraints(std::string_view endpoint_code, std::string_view parameter_name,
						std::string_view method_name);

/// Follow-up sent after an unusable reply.
std::string corrective(std::string_view problem);

} // namespace lrasgen::prompts
