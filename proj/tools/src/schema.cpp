#include "angulab/cli/app.hpp"
#include "angulab/cli/config.hpp"
#include "angulab/relations.hpp"

namespace angulab::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json ref(const char* name) { return {{"$ref", std::string("#/$defs/") + name}}; }

ordered_json number() { return {{"type", "number"}}; }

ordered_json object_of(ordered_json properties, ordered_json required, bool closed = true) {
  ordered_json o{{"type", "object"}, {"properties", std::move(properties)}};
  if (!required.empty()) o["required"] = std::move(required);
  if (closed) o["additionalProperties"] = false;
  return o;
}

}  // namespace

ordered_json emit_schema() {
  ordered_json defs;
  defs["complex"] = object_of({{"re", number()}, {"im", number()}}, {"re", "im"});
  defs["coefficients"] = {
      {"type", "array"},
      {"minItems", 1},
      {"items",
       {{"type", "array"},
        {"prefixItems", ordered_json::array({{{"type", "integer"}}, number(), number()})},
        {"minItems", 3},
        {"maxItems", 3}}}};
  defs["state"] = object_of(
      {{"family", {{"enum", {"periodic", "oscillator", "sphere"}}}},
       {"params", object_of({{"hbar", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                             {"J", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                             {"omega", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                             {"truncation", {{"type", "integer"}, {"minimum", 0}}},
                             {"l", {{"type", "integer"}, {"minimum", 0}}}},
                            ordered_json::array())},
       {"coefficients", ref("coefficients")}},
      {"family", "coefficients"});
  defs["relation_name"] = {{"enum", relations::registry()}};
  defs["config"] = object_of(
      {{"schema_version", {{"const", kSchemaVersion}}},
       {"family", {{"enum", {"scr", "qtp", "sphere", "custom"}}}},
       {"params", object_of({{"m", {{"type", "integer"}}},
                             {"n", {{"type", "integer"}, {"minimum", 0}}},
                             {"l", {{"type", "integer"}, {"minimum", 0}}},
                             {"J", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                             {"omega", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                             {"hbar", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                             {"truncation", {{"type", "integer"}, {"minimum", 0}}}},
                            ordered_json::array())},
       {"coefficients", ref("coefficients")},
       {"coeffs_file", {{"type", "string"}}},
       {"state", ref("state")},
       {"relations", {{"type", "array"}, {"minItems", 1}, {"items", ref("relation_name")}}},
       {"resolution", {{"type", "integer"}, {"minimum", 12}}},
       {"oracle", {{"type", "boolean"}}},
       {"format", {{"enum", {"json", "csv"}}}}},
      {"family"});
  defs["relation_report"] = object_of(
      {{"relation", {{"type", "string"}}},
       {"lhs", number()},
       {"rhs", number()},
       {"slack", number()},
       {"satisfied", {{"type", "boolean"}}},
       {"tolerance", number()},
       {"details",
        {{"type", "object"},
         {"additionalProperties", {{"oneOf", ordered_json::array({number(), ref("complex")})}}}}}},
      {"relation", "lhs", "rhs", "slack", "satisfied", "tolerance", "details"});
  defs["mismatch_matrix"] = object_of(
      {{"observables", {{"type", "array"}, {"items", {{"type", "string"}}}}},
       {"entries", {{"type", "array"}, {"items", {{"type", "array"}, {"items", ref("complex")}}}}},
       {"max_modulus", number()}},
      {"observables", "entries", "max_modulus"});
  defs["outcome"] = object_of(
      {{"relation", ref("relation_name")},
       {"status", {{"enum", {"ok", "not-applicable"}}}},
       {"reason", {{"type", "string"}}},
       {"reports", {{"type", "array"}, {"items", ref("relation_report")}}},
       {"mismatch", ref("mismatch_matrix")},
       {"decomposition", {{"type", "object"}}},
       {"eq24", {{"type", "object"}}},
       {"values", {{"type", "object"}}},
       {"oracle", {{"type", "object"}}}},
      {"relation", "status"}, false);
  defs["scenario_report"] = object_of(
      {{"schema_version", {{"const", kSchemaVersion}}},
       {"kind", {{"const", "scenario"}}},
       {"scenario", {{"type", "object"}}},
       {"state", ref("state")},
       {"results", {{"type", "array"}, {"items", ref("outcome")}}}},
      {"schema_version", "kind", "scenario", "state", "results"});
  defs["sweep_report"] = object_of(
      {{"schema_version", {{"const", kSchemaVersion}}},
       {"kind", {{"const", "sweep"}}},
       {"sweep", {{"type", "object"}}},
       {"entries",
        {{"type", "array"},
         {"items", object_of({{"index", {{"type", "integer"}}},
                              {"params", {{"type", "object"}}},
                              {"state", ref("state")},
                              {"results", {{"type", "array"}, {"items", ref("outcome")}}}},
                             {"index", "params", "state", "results"})}}}},
      {"schema_version", "kind", "sweep", "entries"});

  return ordered_json{{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                      {"$id", "angulab/schema/v1"},
                      {"schema_version", kSchemaVersion},
                      {"$defs", defs},
                      {"oneOf", ordered_json::array({ref("config"), ref("scenario_report"),
                                                     ref("sweep_report"), ref("state")})}};
}

}  // namespace angulab::cli
