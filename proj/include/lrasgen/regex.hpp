// SPDX-License-Identifier: Apache-2.0
#pragma once

// All pattern matching goes through Boost.Regex with Perl syntax.

#include <boost/regex.hpp>

#include <string>
#include <string_view>

namespace lrasgen {

using Regex = boost::regex;

/// Compiles `pattern` in the project-wide dialect. Throws boost::regex_error.
inline Regex compile_regex(std::string_view pattern) {
	return Regex(pattern.begin(), pattern.end(), boost::regex::perl);
}

inline bool regex_search(std::string_view text, const Regex& re) {
	return boost::regex_search(text.begin(), text.end(), re);
}

} // namespace lrasgen
