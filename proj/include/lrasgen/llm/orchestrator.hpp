// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/code_extractor.hpp"
#include "lrasgen/llm/provider.hpp"
#include "lrasgen/llm/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lrasgen {

// Reply validators. Each throws SchemaViolation when the reply does not fit
// the expected shape; valid replies are normalized.

/// Uppercases methods, adds a leading '/', drops repeated (path, method) pairs.
std::vector<EndpointMethod> parse_endpoints(const Json& reply);

struct ParamsAndResponses {
	std::string description;
	std::vector<ParameterSpec> parameters;
	std::vector<ResponseSpec> responses;
};

/// Accepts `require` as boolean or "true"/"false" and `response` as a single
/// object or an array. Path parameters are always required.
ParamsAndResponses parse_params_responses(const Json& reply, const EndpointMethod& endpoint);

/// Coerces values to the parameter's type. Contradictory bounds throw
/// ConstraintContradiction, or with `drop_contradictions` are removed and
/// reported through `diagnostics`.
ConstraintSet parse_constraints(const Json& reply, const ParameterSpec& param, bool drop_contradictions = false,
								std::vector<std::string>* diagnostics = nullptr);

// Stages. Each sends fresh conversations; an unusable reply is answered with
// a corrective follow-up (appended, never replacing earlier turns) at most
// config.max_retries times before the last error is rethrown.

std::vector<EndpointMethod> stage_a_endpoints(const EndpointContext& context, ChatProvider& provider,
											  const ProviderConfig& config);

ParamsAndResponses stage_b_params_responses(const EndpointContext& context, const EndpointMethod& endpoint,
											ChatProvider& provider, const ProviderConfig& config);

ConstraintSet stage_c_constraints(const EndpointContext& context, const EndpointMethod& endpoint,
								  const ParameterSpec& param, ChatProvider& provider, const ProviderConfig& config,
								  std::vector<std::string>* diagnostics = nullptr);

struct PipelineResult {
	std::vector<EndpointRecord> endpoints;
	std::vector<std::string> diagnostics;
};

/// Runs all three stages over every context with at most
/// config.max_in_flight concurrent requests. Output order follows context
/// order, then stage-A order, regardless of completion order. Endpoints whose
/// stage fails are omitted with a diagnostic; fixture misses, transport
/// failures and authentication errors are rethrown.
PipelineResult run_pipeline(const std::vector<EndpointContext>& contexts, ChatProvider& provider,
							const ProviderConfig& config);

} // namespace lrasgen
