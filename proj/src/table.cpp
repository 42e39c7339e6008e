#include "robcons/table.hpp"

#include <cstdio>
#include <map>
#include <utility>

#include "robcons/circulant.hpp"

namespace robcons {

const std::vector<TableRow>& PublishedTable() {
  static const std::vector<TableRow> rows = {
      {10, {3, 5}, {5, 4}, {5, 4}, 0.605, 0.605, 0.0},
      {10, {3, 5}, {8, 1}, {8, 1}, 0.605, 0.645, 0.060},
      {10, {1, 3, 4}, {3, 3, 3}, {3, 3, 3}, 0.481, 0.481, 0.0},
      {10, {1, 3, 4}, {1, 7, 1}, {1, 7, 1}, 0.481, 0.570, 0.156},
      {15, {1, 3, 4}, {4, 6, 4}, {4, 6, 4}, 0.622, 0.622, 0.0},
      {15, {1, 3, 4}, {7, 3, 4}, {7, 3, 4}, 0.622, 0.653, 0.047},
      // Printed as 4,4,5, which sums to 13 instead of n-1 = 14.
      {15, {3, 4, 7}, {4, 5, 5}, {4, 4, 5}, 0.640, 0.640, 0.0},
      {15, {3, 4, 7}, {3, 1, 10}, {3, 1, 10}, 0.640, 0.707, 0.095},
      {20, {1, 2, 4}, {8, 6, 5}, {8, 6, 5}, 0.734, 0.734, 0.0},
      {20, {1, 2, 4}, {2, 2, 15}, {2, 2, 15}, 0.734, 0.801, 0.084},
      {30, {1, 4, 5}, {9, 10, 10}, {9, 10, 10}, 0.908, 0.908, 0.0},
      {30, {1, 4, 5}, {4, 16, 9}, {4, 16, 9}, 0.908, 0.934, 0.027},
      {35, {1, 6, 7, 10}, {10, 4, 10, 10}, {10, 4, 10, 10}, 0.770, 0.770, 0.0},
      {35, {1, 6, 7, 10}, {6, 8, 15, 5}, {6, 8, 15, 5}, 0.770, 0.783, 0.017},
  };
  return rows;
}

std::vector<TableResult> ReproduceTable(const TreeSearchOptions& options,
                                        std::vector<TableRow> rows) {
  if (rows.empty()) rows = PublishedTable();
  std::map<std::pair<int, std::vector<int>>, TreeSearchResult> mad_cache;
  std::vector<TableResult> out;
  for (const TableRow& row : rows) {
    auto key = std::make_pair(row.n, row.generators);
    auto it = mad_cache.find(key);
    if (it == mad_cache.end()) {
      it = mad_cache.emplace(key, FindMad(row.n, row.generators, options)).first;
    }
    TableResult r;
    r.row = row;
    r.mad = it->second;
    r.cmad = FindCmad(CirculantSpec{row.n, row.generators, row.h, 1}, options);
    r.delta = (r.cmad.hstar() - r.mad.hstar()) / r.cmad.hstar();
    r.heuristic = r.mad.heuristic || r.cmad.heuristic;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string JoinQuoted(const std::vector<int>& xs) {
  std::string s = "\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s + "\"";
}

}  // namespace

std::string TableCsv(const std::vector<TableResult>& results) {
  std::string out = "n,classes,h,H*_MAD,H*_cMAD,Delta,heuristic\n";
  char buf[128];
  for (const TableResult& r : results) {
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f,%s\n", r.mad.hstar(),
                  r.cmad.hstar(), 100.0 * r.delta, r.heuristic ? "true" : "false");
    out += std::to_string(r.row.n) + "," + JoinQuoted(r.row.generators) + "," +
           JoinQuoted(r.row.h) + buf;
  }
  return out;
}

}  // namespace robcons
