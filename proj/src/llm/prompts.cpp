// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/llm/prompts.hpp"

namespace lrasgen::prompts {

const Json& endpoints_example() {
	static const Json example = Json::parse(R"J([{
		"endpoint_path": "/api/getUser",
		"http_method": "GET",
		"method_name": "getUser()"
	}])J");
	return example;
}

// Adds "description" and "return_type" to each response object.
const Json& params_responses_example() {
	static const Json example = Json::parse(R"J([{
		"endpoint_path": "/api/getUser",
		"endpoint_method": "GET",
		"description": "An Endpoint to Get User List",
		"parameters": [
			{"name": "str_param", "type": "string", "require": "true", "position": "query", "description": "some string parameter"},
			{"name": "num_param", "type": "int", "require": "true", "position": "path", "description": "some number parameter"},
			{"name": "bool_param", "type": "boolean", "require": "true", "position": "query", "description": "some boolean parameter"}
		],
		"response": {
			"status_code": 200,
			"description": "The list of users",
			"return_type": "List<User>",
			"return_schema": [{"userName": "u", "password": "p", "birthday": "1970-01-01"},
							  {"userName": "u", "password": "p", "birthday": "1970-01-01"}],
			"exception": "NotFoundException"
		}
	}])J");
	return example;
}

const Json& constraints_example() {
	static const Json example = Json::parse(R"J([{
		"name": "str_param", "type": "string", "require": "true", "position": "query",
		"description": "some string parameter",
		"max_length": "128", "min_length": "16",
		"enum": ["enum1", "enum2", "enum3"],
		"format": "yyyy-mm-dd hh24:mi:ss",
		"default_value": "hello world"
	}, {
		"name": "num_param", "type": "int", "require": "true", "position": "path",
		"description": "some number parameter",
		"min": 2, "max": 16, "default_value": 0
	}, {
		"name": "bool_param", "type": "boolean", "require": "true", "position": "query",
		"description": "some boolean parameter",
		"default_value": true
	}])J");
	return example;
}

std::string endpoints(std::string_view code) {
	std::string s;
	s += "Read the endpoint entry code (scoped from ## to ##): ";
	s += "##";
	s += code;
	s += "##, and following these steps: ";
	s += "1.How many endpoints are included in the code? ";
	s += "2.For each endpoint, what is its HTTP_METHOD (e.g., GET, POST, ...)? ";
	s += "3.For each endpoint, what is its URL path? ";
	s += "4.For each endpoint, what is its method name? ";
	s += "At last, provide the result in JSON format, please strictly follow the example: ";
	s += endpoints_example().dump();
	s += ".";
	return s;
}

std::string params_responses(std::string_view code, std::string_view method_name) {
	std::string s;
	s += "Please read the endpoint codes (scoped from ## to ##): ";
	s += "##";
	s += code;
	s += "##, and following these steps:";
	s += "For the specific endpoint method named: ";
	s += method_name;
	s += ", how many parameters are there? ";
	s += "1.For each parameter, what is its name, and type (e.g., string, number, integer, object, array, boolean)? Is it required? ";
	s += "2.What is this parameter located in (e.g., query or path)? ";
	s += "3.What is this parameter represent for? ";
	s += "4.What is this endpoint's response? how many responses do this endpoint returned?";
	s += " what is the return HTTP status code for each one?";
	s += " If an exception occurs, what is the exception message?";
	s += " If any data is returned, what is the specific schema of the data?";
	s += "At last, provide the result in JSON format, please strictly follow the example: ";
	s += params_responses_example().dump();
	s += ".";
	return s;
}

std::string constraints(std::string_view code, std::string_view parameter_name, std::string_view method_name) {
	std::string s;
	s += "Please read the endpoint codes (scoped from ## to ##): ";
	s += "##";
	s += code;
	s += "##, and following these steps:";
	s += "For the specific parameter: ";
	s += parameter_name;
	s += " in endpoint method named: ";
	s += method_name;
	s += ",";
	s += "1.What is its type (e.g., string, number, integer, object, array, boolean)? Is it required? ";
	s += "2.For string type parameter, what is its minLength and maxLength? what is its default value?";
	s += " If this string parameter is an enumeration, what is its enumeration?";
	s += " If this string parameter is in date or pattern format, what is its date-time format or pattern?";
	s += "3.For integer and number type parameter, what is its range? what is its default value? ";
	s += "4.For boolean type parameter, is it True or False? ";
	s += "5.For parameter in mapping, please read the endpoint codes and analyzed the above steps. ";
	s += "At last, provide the result in JSON format, please strictly follow the example: ";
	s += constraints_example().dump();
	s += ".";
	return s;
}

std::string corrective(std::string_view problem) {
	std::string s = "Your previous reply could not be used: ";
	s += problem;
	s += ". Reply again with only the JSON result, strictly following the example format.";
	return s;
}

} // namespace lrasgen::prompts
