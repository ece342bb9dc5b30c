// Copyright 2026 The tabconf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tabconf/error.hpp"

namespace tabconf {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidRole: return "InvalidRole";
    case ErrorCode::kMissingAnswerKind: return "MissingAnswerKind";
    case ErrorCode::kDuplicateType: return "DuplicateType";
    case ErrorCode::kInvalidDatasetName: return "InvalidDatasetName";
    case ErrorCode::kFacetAbsent: return "FacetAbsent";
    case ErrorCode::kUnknownDataset: return "UnknownDataset";
    case ErrorCode::kRaggedTable: return "RaggedTable";
    case ErrorCode::kBudgetInfeasible: return "BudgetInfeasible";
    case ErrorCode::kPayloadMismatch: return "PayloadMismatch";
    case ErrorCode::kMalformedOutput: return "MalformedOutput";
    case ErrorCode::kMalformedPrefix: return "MalformedPrefix";
    case ErrorCode::kInvalidOutput: return "InvalidOutput";
    case ErrorCode::kUnknownCode: return "UnknownCode";
    case ErrorCode::kColumnOutOfRange: return "ColumnOutOfRange";
    case ErrorCode::kNonNumericAggregate: return "NonNumericAggregate";
    case ErrorCode::kNonComparable: return "NonComparable";
    case ErrorCode::kSqlSyntax: return "SqlSyntax";
    case ErrorCode::kInvalidMixSpec: return "InvalidMixSpec";
    case ErrorCode::kNTooLarge: return "NTooLarge";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNoCells: return "NoCells";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kMissingCells: return "MissingCells";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kConfigSyntax: return "ConfigSyntax";
  }
  return "Unknown";
}

}  // namespace tabconf
