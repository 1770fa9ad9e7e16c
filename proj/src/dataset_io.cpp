// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#include "supermtree/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace smt {

const TimeSeries& as_series(const Record& r) {
  if (const auto* s = std::get_if<TimeSeries>(&r.object)) return *s;
  throw DataError("record " + std::to_string(r.id) + " is not a series");
}

const PointSet& as_set(const Record& r) {
  if (const auto* s = std::get_if<PointSet>(&r.object)) return *s;
  throw DataError("record " + std::to_string(r.id) + " is not a set");
}

namespace {

Record parse_record(const nlohmann::json& j, std::size_t line_no,
                    Dataset& dataset, bool first) {
  if (!j.is_object())
    throw DataError("line " + std::to_string(line_no) + ": not a JSON object");
  if (!j.contains("id") || !j.at("id").is_number_unsigned())
    throw DataError("line " + std::to_string(line_no) + ": missing unsigned 'id'");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw DataError("line " + std::to_string(line_no) + ": missing 'kind'");
  if (!j.contains("values") || !j.at("values").is_array())
    throw DataError("line " + std::to_string(line_no) + ": missing 'values' array");

  Record rec;
  rec.id = j.at("id").get<std::uint64_t>();
  if (j.contains("label")) {
    if (!j.at("label").is_string())
      throw DataError("line " + std::to_string(line_no) + ": 'label' must be a string");
    rec.label = j.at("label").get<std::string>();
  }

  const std::string kind = j.at("kind").get<std::string>();
  ObjectKind k;
  if (kind == "series")
    k = ObjectKind::Series;
  else if (kind == "set")
    k = ObjectKind::Set;
  else
    throw DataError("line " + std::to_string(line_no) + ": unknown kind '" + kind + "'");

  std::vector<double> values;
  values.reserve(j.at("values").size());
  for (const auto& v : j.at("values")) {
    if (!v.is_number())
      throw DataError("line " + std::to_string(line_no) + ": non-numeric value");
    const double x = v.get<double>();
    if (!std::isfinite(x))
      throw DataError("line " + std::to_string(line_no) + ": non-finite value");
    values.push_back(x);
  }

  if (first) {
    dataset.kind = k;
  } else if (dataset.kind != k) {
    throw DataError("line " + std::to_string(line_no) + ": mixed record kinds");
  }

  if (k == ObjectKind::Series) {
    std::size_t dim = 1;
    if (j.contains("dim")) {
      if (!j.at("dim").is_number_unsigned() || j.at("dim").get<std::uint64_t>() == 0)
        throw DataError("line " + std::to_string(line_no) + ": 'dim' must be a positive integer");
      dim = j.at("dim").get<std::size_t>();
    }
    if (first)
      dataset.dim = dim;
    else if (dataset.dim != dim)
      throw DataError("line " + std::to_string(line_no) + ": mixed series dimensionality");
    if (values.size() % dim != 0)
      throw DataError("line " + std::to_string(line_no) + ": value count not divisible by dim");
    rec.object = TimeSeries(dim, std::move(values));
  } else {
    rec.object = PointSet(std::move(values));
  }
  return rec;
}

}  // namespace

Dataset parse_jsonl(const std::string& text) {
  Dataset dataset;
  std::unordered_set<std::uint64_t> ids;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    Record rec = parse_record(j, line_no, dataset, first);
    if (!ids.insert(rec.id).second)
      throw DataError("line " + std::to_string(line_no) + ": duplicate id " +
                      std::to_string(rec.id));
    dataset.records.push_back(std::move(rec));
    first = false;
  }
  return dataset;
}

Dataset load_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  try {
    return parse_jsonl(buf.str());
  } catch (DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string to_jsonl(const Dataset& dataset) {
  std::string out;
  for (const auto& rec : dataset.records) {
    nlohmann::ordered_json j;
    j["id"] = rec.id;
    j["label"] = rec.label;
    if (dataset.kind == ObjectKind::Series) {
      const TimeSeries& s = as_series(rec);
      j["kind"] = "series";
      j["dim"] = s.dim();
      j["values"] = std::vector<double>(s.values().begin(), s.values().end());
    } else {
      const PointSet& s = as_set(rec);
      j["kind"] = "set";
      j["values"] = std::vector<double>(s.values().begin(), s.values().end());
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

void save_jsonl(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << to_jsonl(dataset);
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

}  // namespace smt
