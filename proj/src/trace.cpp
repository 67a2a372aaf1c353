#include "telesim/trace.hpp"

#include <json.hpp>

namespace telesim::trace {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string field(const std::string& key, const std::string& value) {
  return key + "=" + value;
}

}  // namespace

std::string stage_line(const std::string& stage, const fock::StateVector& state,
                       Format format) {
  if (format == Format::Text) {
    return field("stage", stage) + " " + field("state", state.to_text());
  }
  ordered_json j;
  j["stage"] = stage;
  j["state"] = state.to_text();
  return j.dump();
}

std::string trial_line(const qt::TrialRecord& record, Format format) {
  const auto& t = record.timestamps;
  if (format == Format::Text) {
    std::string line;
    line += field("seed", std::to_string(record.seed));
    line += " " + field("outcome", std::string(1, qt::to_char(record.outcome)));
    line += " " + field("instruction", qt::to_string(record.instruction));
    line += " " + field("final", std::string(1, fock::to_char(
                                     record.bob_polarization_final)));
    line += " " + field("call", record.call_made ? "yes" : "no");
    line += " " + field("arrival", std::to_string(t.photon_arrival));
    line += " " + field("click", std::to_string(t.click));
    line += " " + field("call_sent",
                        t.call_sent ? std::to_string(*t.call_sent) : "-");
    line += " " + field("corrected", std::to_string(t.correction_applied));
    line += " " + field("detected", std::to_string(t.detection));
    return line;
  }
  ordered_json j;
  j["seed"] = record.seed;
  j["outcome"] = std::string(1, qt::to_char(record.outcome));
  j["instruction"] = qt::to_string(record.instruction);
  j["final"] = std::string(1, fock::to_char(record.bob_polarization_final));
  j["call"] = record.call_made;
  j["arrival"] = t.photon_arrival;
  j["click"] = t.click;
  if (t.call_sent) {
    j["call_sent"] = *t.call_sent;
  } else {
    j["call_sent"] = nullptr;
  }
  j["corrected"] = t.correction_applied;
  j["detected"] = t.detection;
  return j.dump();
}

std::string classical_line(const classical::ClassicalTrialRecord& record,
                           Format format) {
  const std::string pair = std::string(1, classical::to_char(record.lm_pair.to_alice)) +
                           classical::to_char(record.lm_pair.to_bob);
  if (format == Format::Text) {
    std::string line;
    line += field("pair", pair);
    line += " " + field("filtered", record.filtered ? "yes" : "no");
    line += " " + field("instruction", record.instruction
                                           ? classical::to_string(*record.instruction)
                                           : "-");
    line += " " + field("bob_final",
                        record.bob_final
                            ? std::string(1, classical::to_char(*record.bob_final))
                            : "-");
    return line;
  }
  ordered_json j;
  j["pair"] = pair;
  j["filtered"] = record.filtered;
  if (record.instruction) {
    j["instruction"] = classical::to_string(*record.instruction);
  } else {
    j["instruction"] = nullptr;
  }
  if (record.bob_final) {
    j["bob_final"] = std::string(1, classical::to_char(*record.bob_final));
  } else {
    j["bob_final"] = nullptr;
  }
  return j.dump();
}

}  // namespace telesim::trace
