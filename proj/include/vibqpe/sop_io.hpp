// Copyright 2026 The vibqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "json.hpp"
#include "vibqpe/sop.hpp"

namespace vibqpe {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSopSchema = "sop-v1";

Json sop_to_json(const SopHamiltonian& h);
SopHamiltonian sop_from_json(const Json& doc);

/// Serialized with round-trip float precision; throws SchemaError on non-finite data.
std::string dump_sop(const SopHamiltonian& h);
SopHamiltonian parse_sop(std::string_view text);

void write_sop(const SopHamiltonian& h, const std::string& path);
SopHamiltonian read_sop(const std::string& path);

/// Exact structural and bitwise equality of two Hamiltonians.
bool identical(const SopHamiltonian& a, const SopHamiltonian& b);

// Shared JSON helpers for the other schemas.
Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j, const std::string& where);
double finite_number(const Json& j, const std::string& where);
const Json& require_key(const Json& obj, const char* key, const std::string& where);
void require_version(const Json& doc, std::string_view version);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// 64-bit FNV-1a digest as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace vibqpe
