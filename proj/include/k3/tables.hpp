#pragma once
#include "k3/moduli.hpp"

#include <string>
#include <vector>

namespace k3 {

struct TableIClass {
  std::vector<BinaryForm> forms;
  std::vector<std::pair<long, long>> rc;
};

struct TableIRow {
  int no;
  std::string phi;
  std::string tor;
  std::vector<TableIClass> classes;  // two entries only for the separated rows
};

struct TableIIRow {
  int no;
  int rank;
  std::string phi;
  std::string tor;
  std::vector<long> counts;  // [c_1, ..., c_k]
};

const std::vector<TableIRow>& table1();
const std::vector<TableIIRow>& table2();

// recompute and diff one row; empty result means match
std::vector<std::string> check_table1_row(const TableIRow& row, const ComponentReport* precomputed = nullptr);
std::vector<std::string> check_table2_row(const TableIIRow& row, const ComponentReport* precomputed = nullptr);

std::string format_table1_row(const TableIRow& row);
std::string format_table2_row(const TableIIRow& row);

}  // namespace k3
