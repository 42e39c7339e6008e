#pragma once

#include <string>
#include <vector>

#include "robcons/tree_search.hpp"

namespace robcons {

// One row of the circulant comparison table as published, plus the profile
// actually evaluated (they differ only where the printed profile is not a
// valid one).
struct TableRow {
  int n = 0;
  std::vector<int> generators;
  std::vector<int> h;
  std::vector<int> printed_h;
  double printed_mad = 0.0;
  double printed_cmad = 0.0;
  double printed_delta = 0.0;  // fraction, e.g. 0.06 for "6.0%"
};

const std::vector<TableRow>& PublishedTable();

struct TableResult {
  TableRow row;
  TreeSearchResult mad;
  TreeSearchResult cmad;
  double delta = 0.0;  // (cMAD - MAD) / cMAD
  bool heuristic = false;
};

// Evaluates `rows` (all published rows when empty); MAD trees are shared
// between rows with the same (n, generators).
std::vector<TableResult> ReproduceTable(const TreeSearchOptions& options,
                                        std::vector<TableRow> rows = {});

// Header n,classes,h,H*_MAD,H*_cMAD,Delta,heuristic; LF line endings.
// Values with 6 decimals, Delta in percent.
std::string TableCsv(const std::vector<TableResult>& results);

}  // namespace robcons
