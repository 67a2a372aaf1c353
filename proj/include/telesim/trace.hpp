#pragma once

#include <string>

#include "telesim/classical_protocol.hpp"
#include "telesim/qt_protocol.hpp"

namespace telesim::trace {

enum class Format { Text, Jsonl };

/// One record per line. Text form uses space-separated key=value fields;
/// jsonl is one JSON object per line with the same field names and stable
/// key order. Absent optionals render as "-" (text) or null (jsonl).

std::string stage_line(const std::string& stage, const fock::StateVector& state,
                       Format format);

std::string trial_line(const qt::TrialRecord& record, Format format);

std::string classical_line(const classical::ClassicalTrialRecord& record,
                           Format format);

}  // namespace telesim::trace
