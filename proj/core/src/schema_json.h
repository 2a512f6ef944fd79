//
// Copyright 2026 The betalike Authors
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
//

// Internal JSON bridge shared by the schema loader and release serializer.

#ifndef BETALIKE_SRC_SCHEMA_JSON_H_
#define BETALIKE_SRC_SCHEMA_JSON_H_

#include <nlohmann/json.hpp>

#include "betalike/schema.h"

namespace betalike::internal {

nlohmann::json SchemaToJsonValue(const Schema& schema);
Schema SchemaFromJsonValue(const nlohmann::json& doc);

}  // namespace betalike::internal

#endif  // BETALIKE_SRC_SCHEMA_JSON_H_
