#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qenc/encoders.hpp"

namespace qenc {

// nlohmann::json keeps object keys sorted (std::map), which makes these
// documents byte-stable; doubles are emitted in shortest round-trip form.

std::string encoder_to_json(const FittedEncoder& enc, int indent) {
  nlohmann::json doc;
  doc["format"] = "qenc-encoder-v1";
  doc["kind"] = std::string(to_string(enc.kind));
  doc["m"] = enc.m;
  doc["quantiles"] = enc.quantiles;
  doc["columns"] = enc.columns;
  doc["output_names"] = enc.output_names;
  if (enc.kind == EncoderKind::ordinal) {
    nlohmann::json codes = nlohmann::json::object();
    for (const auto& [col, code_map] : enc.codes) {
      nlohmann::json entry = nlohmann::json::object();
      for (const auto& [label, code] : code_map) entry[label] = code;
      codes[col] = std::move(entry);
    }
    doc["codes"] = std::move(codes);
  } else {
    nlohmann::json tables = nlohmann::json::object();
    for (const auto& [col, table] : enc.tables) {
      nlohmann::json entries = nlohmann::json::object();
      for (const auto& [label, entry] : table.entries) {
        entries[label] = {{"count", entry.count}, {"stats", entry.local_stats}};
      }
      tables[col] = {{"total_count", table.total_count},
                     {"global_stats", table.global_stats},
                     {"entries", std::move(entries)}};
    }
    doc["tables"] = std::move(tables);
  }
  return doc.dump(indent);
}

FittedEncoder encoder_from_json(std::string_view json_text) {
  const nlohmann::json doc = nlohmann::json::parse(json_text);
  if (doc.value("format", "") != "qenc-encoder-v1") {
    throw std::invalid_argument("unrecognized encoder document format");
  }
  FittedEncoder enc;
  const auto kind = encoder_kind_from(doc.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown encoder kind");
  enc.kind = *kind;
  enc.m = doc.at("m").get<double>();
  enc.quantiles = doc.at("quantiles").get<std::vector<double>>();
  enc.columns = doc.at("columns").get<std::vector<std::string>>();
  enc.output_names = doc.at("output_names").get<std::vector<std::string>>();
  if (enc.kind == EncoderKind::ordinal) {
    for (const auto& [col, entry] : doc.at("codes").items()) {
      std::map<std::string, std::int64_t, std::less<>> code_map;
      for (const auto& [label, code] : entry.items()) {
        code_map.emplace(label, code.get<std::int64_t>());
      }
      enc.codes.emplace(col, std::move(code_map));
    }
  } else {
    for (const auto& [col, tbl] : doc.at("tables").items()) {
      CategoryTable table;
      table.total_count = tbl.at("total_count").get<std::uint64_t>();
      table.global_stats = tbl.at("global_stats").get<std::vector<double>>();
      for (const auto& [label, entry] : tbl.at("entries").items()) {
        CategoryTable::Entry e;
        e.count = entry.at("count").get<std::uint64_t>();
        e.local_stats = entry.at("stats").get<std::vector<double>>();
        table.entries.emplace(label, std::move(e));
      }
      enc.tables.emplace(col, std::move(table));
    }
  }
  return enc;
}

}  // namespace qenc
