// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "supermtree/pointset.hpp"
#include "supermtree/timeseries.hpp"

namespace smt {

/// Malformed or inconsistent dataset content.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File could not be opened or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ObjectKind { Series, Set };

struct Record {
  std::uint64_t id = 0;
  std::string label;
  std::variant<TimeSeries, PointSet> object;
};

/// A homogeneous collection of labeled records; all series records share
/// one dimensionality.  An empty dataset is compatible with any kind.
struct Dataset {
  ObjectKind kind = ObjectKind::Series;
  std::size_t dim = 1;  // meaningful for series datasets
  std::vector<Record> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

const TimeSeries& as_series(const Record& r);
const PointSet& as_set(const Record& r);

/// Reads a JSON-Lines dataset: one object per line with fields
///   id (unsigned, unique), label (string, optional, default ""),
///   kind ("series" | "set"), dim (positive, series only, default 1),
///   values (flat row-major array of finite numbers).
/// Blank lines are skipped.  Throws IoError / DataError.
Dataset load_jsonl(const std::string& path);

/// Writes the dataset in the same format, one record per line, with a
/// fixed key order so identical datasets serialize byte-identically.
void save_jsonl(const Dataset& dataset, const std::string& path);

/// In-memory counterparts used by the file functions and by tests.
Dataset parse_jsonl(const std::string& text);
std::string to_jsonl(const Dataset& dataset);

}  // namespace smt
