#include "k3/tables.hpp"

#include <algorithm>
#include <sstream>

namespace k3 {

namespace {

// row format: no|phi|tor|class(;class)  class = a,b,c,r,c(+a,b,c,r,c)
const char* kTable1[] = {
    "1|E8+A9+A1|[1]|2,0,10,2,0",
    "2|E8+A6+A3+A1|[1]|6,2,10,0,2",
    "3|E8+2A5|[1]|6,0,6,0,2",
    "4|E7+E6+A5|[1]|6,0,6,0,2",
    "5|E7+D5+A6|[1]|6,2,10,0,2",
    "6|E7+A11|[1]|4,0,6,0,2",
    "7|E7+A10+A1|[1]|2,0,22,1,0+6,2,8,0,2",
    "8|E7+A8+A2+A1|[1]|6,0,18,1,2",
    "9|E7+A7+A4|[1]|6,2,14,0,2",
    "10|E7+A7+A3+A1|[2]|4,0,8,0,2",
    "11|E7+A6+A5|[1]|4,2,22,0,2",
    "12|E7+A6+A4+A1|[1]|2,0,70,1,0+8,2,18,0,2",
    "13|E7+A5+A4+A2|[1]|6,0,30,2,0",
    "14|E6+D5+A7|[1]|8,0,12,0,2",
    "15|E6+A12|[1]|4,1,10,0,2",
    "16|E6+A11+A1|[1]|6,0,12,0,2",
    "17|E6+A9+A2+A1|[1]|12,6,18,0,2",
    "18|E6+A8+A4|[1]|12,3,12,1,2",
    "19|E6+A8+A3+A1|[1]|12,0,18,1,2",
    "20|E6+A7+A5|[1]|6,0,24,0,2",
    "21|E6+A6+A5+A1|[1]|6,0,42,0,2",
    "22|E6+A6+A3+A2+A1|[1]|6,0,84,1,0+12,0,42,1,0",
    "23|E6+A5+A4+A3|[1]|12,0,30,2,0",
    "24|D11+A6+A1|[1]|6,2,10,0,2",
    "25|D9+D5+A4|[1]|4,0,20,2,0",
    "26|D7+A6+A3+A2|[1]|8,4,44,0,2",
    "27|D6+A9+A2+A1|[2]|4,2,16,1,0;6,0,10,1,0",
    "28|D6+A7+A4+A1|[2]|6,2,14,0,2",
    "29|D6+2A6|[1]|14,0,14,0,2",
    "30|D5+A13|[1]|6,2,10,0,2",
    "31|D5+A12+A1|[1]|2,0,52,1,0+6,2,18,0,2",
    "32|D5+A10+A2+A1|[1]|14,4,20,0,2",
    "33|D5+A9+A4|[1]|10,0,20,1,2",
    "34|D5+A9+A3+A1|[2]|8,4,12,0,2",
    "35|D5+A8+A5|[1]|12,0,18,1,2",
    "36|D5+A8+A4+A1|[1]|2,0,180,1,0+18,0,20,1,0",
    "37|D5+2A6+A1|[1]|14,0,28,0,2",
    "38|D5+A6+A5+A2|[1]|6,0,84,1,0+12,0,42,1,0",
    "39|A17+A1|[1]|4,2,10,0,2",
    "40|A16+2A1|[1]|2,0,34,1,0+4,2,18,1,0",
    "41|A15+A2+A1|[1]|10,2,10,0,2",
    "42|A14+A4|[1]|10,5,10,0,2",
    "43|A14+A3+A1|[1]|10,0,12,0,2",
    "44|A14+A2+2A1|[1]|12,6,18,0,2",
    "45|A13+A5|[1]|4,2,22,0,2",
    "46|A13+A4+A1|[1]|2,0,70,1,0+8,2,18,0,2",
    "47|A13+A3+2A1|[2]|6,2,10,0,2",
    "48|A12+A5+A1|[1]|10,2,16,0,2",
    "49|A12+A4+2A1|[1]|2,0,130,1,0+18,8,18,1,0",
    "50|A11+A6+A1|[1]|4,0,42,0,2",
    "51|A11+A4+A2+A1|[1]|12,0,30,0,4",
    "52|A11+A3+A2+2A1|[2]|12,0,12,0,2",
    "53|A10+A7+A1|[1]|2,0,88,1,0+10,2,18,0,2",
    "54|A10+A6+A2|[1]|4,1,58,0,2+16,5,16,1,0",
    "55|A10+A6+2A1|[1]|12,2,26,0,2",
    "56|A10+A5+A3|[1]|4,0,66,1,0+12,0,22,1,0",
    "57|A10+A5+A2+A1|[1]|6,0,66,1,0+18,6,24,0,2",
    "58|A10+A4+A3+A1|[1]|12,4,38,0,2+20,0,22,1,0",
    "59|A10+A4+2A2|[1]|6,3,84,1,0+24,9,24,1,0",
    "60|2A9|[1]|10,0,10,2,0",
    "61|A9+A8+A1|[1]|10,0,18,2,0",
    "62|A9+A6+A2+A1|[1]|10,0,42,2,0",
    "63|A9+A5+A4|[1]|10,0,30,1,2",
    "64|A9+A5+A3+A1|[2]|10,0,12,1,0;10,0,12,1,0",
    "65|A9+2A4+A1|[5]|2,0,10,2,0",
    "66|A9+A4+A3+2A1|[2]|10,0,20,1,2",
    "67|2A8+2A1|[1]|18,0,18,1,2",
    "68|A8+A7+A2+A1|[1]|18,0,24,1,2",
    "69|A8+A6+A3+A1|[1]|10,4,52,0,2",
    "70|A8+A6+A2+2A1|[1]|18,0,42,1,2",
    "71|A8+A5+A4+A1|[1]|18,0,30,1,2",
    "72|A8+A5+2A2+A1|[3]|6,0,18,1,2",
    "73|A8+A4+A3+A2+A1|[1]|6,0,180,1,2",
    "74|2A7+2A2|[1]|24,0,24,0,2",
    "75|A7+A6+A5|[1]|16,4,22,0,2",
    "76|A7+A6+A4+A1|[1]|2,0,280,1,0+18,4,32,0,2",
    "77|A7+A6+A3+A2|[1]|4,0,168,0,2",
    "78|A7+A6+A3+2A1|[2]|12,4,20,0,2",
    "79|A7+2A5+A1|[2]|6,0,24,0,2",
    "80|A7+A5+A4+A2|[1]|6,0,120,1,0+24,0,30,1,0",
    "81|A7+A5+A3+A2+A1|[2]|12,0,24,2,0",
    "82|A7+A4+A3+2A2|[1]|12,0,120,2,0",
    "83|2A6+A4+A2|[1]|28,7,28,2,0",
    "84|2A6+2A3|[1]|28,0,28,0,2",
    "85|2A6+2A2+2A1|[1]|42,0,42,2,0",
    "86|A6+A5+A4+A2+A1|[1]|18,6,72,0,2+30,0,42,1,0",
    "87|A6+2A4+A3+A1|[1]|10,0,140,1,0+20,0,70,1,0",
    "88|2A5+2A4|[1]|30,0,30,2,0",
    "89|2A5+4A2|[3,3]|6,0,6,0,2",
};

// no|rank|phi|tor|c1,c2,...
const char* kTable2[] = {
    "1|17|E7+D6+A3+A1|[2]|1,1",
    "2|17|E7+2A5|[1]|2",
    "3|17|E7+A5+A3+2A1|[2]|1,1",
    "4|17|E6+A11|[1]|2",
    "5|17|E6+A6+A5|[1]|2",
    "6|17|E6+2A5+A1|[1]|2",
    "7|17|D12+A3+2A1|[2]|1,1",
    "8|17|D10+D6+A1|[2]|1,1",
    "9|17|D8+A7+2A1|[2]|1,1",
    "10|17|D8+A5+A3+A1|[2]|1,1",
    "11|17|2D6+A3+2A1|[2,2]|1,1",
    "12|17|D6+D5+A5+A1|[2]|1,1",
    "13|17|D6+A9+2A1|[2]|1,1",
    "14|17|D6+A7+A3+A1|[2]|1,1",
    "15|17|D6+A7+A2+2A1|[2]|1,1",
    "16|17|D6+A5+A3+A2+A1|[2]|1,1",
    "17|17|D6+A5+A3+3A1|[2,2]|1,1",
    "18|17|D5+2A6|[1]|2",
    "19|17|D4+2A6+A1|[1]|2",
    "20|17|A11+A5+A1|[1]|2",
    "21|17|A9+A5+3A1|[2]|1,1",
    "22|17|A9+A3+A2+3A1|[2]|1,1",
    "23|17|A7+2A5|[1]|2",
    "24|17|A7+A5+A3+2A1|[2]|1,1",
    "25|17|2A6+A3+2A1|[1]|2",
    "26|17|A6+2A5+A1|[1]|2",
    "27|17|2A5+2A3+A1|[2]|1,1",
    "28|17|2A5+A3+A2+2A1|[2]|1,1",
    "29|16|E7+D6+3A1|[2]|1,1",
    "30|16|E7+2A3+3A1|[2]|1,1",
    "31|16|E6+2A5|[1]|2",
    "32|16|D10+A3+3A1|[2]|1,1",
    "33|16|D8+D6+2A1|[2]|1,1",
    "34|16|D8+A5+3A1|[2]|1,1",
    "35|16|D8+2A3+2A1|[2]|1,1,1",
    "36|16|2D6+A3+A1|[2]|1,1",
    "37|16|2D6+4A1|[2,2]|1,1",
    "38|16|D6+D5+A3+2A1|[2]|1,1",
    "39|16|D6+D4+A5+A1|[2]|1,1",
    "40|16|D6+A9+A1|[2]|1,1",
    "41|16|D6+A7+3A1|[2]|1,1",
    "42|16|D6+A5+A3+2A1|[2]|1,1,1",
    "43|16|D6+A5+A2+3A1|[2]|1,1",
    "44|16|D6+3A3+A1|[2]|1,1",
    "45|16|D6+2A3+A2+2A1|[2]|1,1",
    "46|16|D6+2A3+4A1|[2,2]|1,1",
    "47|16|D5+A5+A3+3A1|[2]|1,1",
    "48|16|D4+A7+A3+2A1|[2]|1,1",
    "49|16|A11+A3+2A1|[2]|1,1",
    "50|16|A9+A3+4A1|[2]|1,1",
    "51|16|A7+A5+4A1|[2]|1,1",
    "52|16|A7+A3+A2+4A1|[2]|1,1",
    "53|16|3A5+A1|[1]|2",
    "54|16|2A5+A3+3A1|[2]|1,1,1",
    "55|16|A5+3A3+2A1|[2]|1,1",
    "56|16|A5+2A3+A2+3A1|[2]|1,1",
    "57|16|A5+2A3+5A1|[2,2]|1,1",
    "58|15|E7+A3+5A1|[2]|1,1",
    "59|15|D8+A3+4A1|[2]|1,1,1",
    "60|15|2D6+3A1|[2]|1,1",
    "61|15|D6+D5+4A1|[2]|1,1",
    "62|15|D6+D4+A3+2A1|[2]|1,1",
    "63|15|D6+A7+2A1|[2]|1,1",
    "64|15|D6+A5+A3+A1|[2]|1,1",
    "65|15|D6+A5+4A1|[2]|1,1",
    "66|15|D6+2A3+3A1|[2]|1,1,1",
    "67|15|D6+A3+A2+4A1|[2]|1,1",
    "68|15|D6+A3+6A1|[2,2]|1,1",
    "69|15|D5+2A3+4A1|[2]|1,1",
    "70|15|D4+A5+A3+3A1|[2]|1,1",
    "71|15|D4+3A3+2A1|[2]|1,1",
    "72|15|A9+A3+3A1|[2]|1,1",
    "73|15|A7+2A3+2A1|[2]|1,1",
    "74|15|A7+A3+5A1|[2]|1,1",
    "75|15|2A5+A3+2A1|[2]|1,1",
    "76|15|2A5+5A1|[2]|1,1",
    "77|15|A5+2A3+4A1|[2]|1,1,1",
    "78|15|A5+A3+A2+5A1|[2]|1,1",
    "79|15|3A3+A2+4A1|[2]|1,1",
    "80|15|3A3+6A1|[2,2]|1,1",
    "81|14|D8+6A1|[2]|1,1",
    "82|14|D6+D4+4A1|[2]|1,1",
    "83|14|D6+A5+3A1|[2]|1,1",
    "84|14|D6+2A3+2A1|[2]|1,1",
    "85|14|D6+A3+5A1|[2]|1,1,1",
    "86|14|D6+A2+6A1|[2]|1,1",
    "87|14|D5+A3+6A1|[2]|1,1",
    "88|14|D4+2A3+4A1|[2]|1,1",
    "89|14|A7+A3+4A1|[2]|1,1",
    "90|14|A5+2A3+3A1|[2]|1,1",
    "91|14|A5+A3+6A1|[2]|1,1,1",
    "92|14|4A3+2A1|[2]|1,1",
    "93|14|3A3+5A1|[2]|1,1",
    "94|14|2A3+A2+6A1|[2]|1,1",
    "95|14|2A3+8A1|[2,2]|1,1",
    "96|13|D6+A3+4A1|[2]|1,1",
    "97|13|D6+7A1|[2]|1,1",
    "98|13|D4+A3+6A1|[2]|1,1",
    "99|13|A5+A3+5A1|[2]|1,1",
    "100|13|A5+8A1|[2]|1,1",
    "101|13|3A3+4A1|[2]|1,1",
    "102|13|2A3+7A1|[2]|1,1",
    "103|13|A3+A2+8A1|[2]|1,1",
    "104|12|D6+6A1|[2]|1,1",
    "105|12|2A3+6A1|[2]|1,1",
    "106|12|A3+9A1|[2]|1,1",
    "107|11|A3+8A1|[2]|1,1",
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, sep)) out.push_back(tok);
  return out;
}

TableIRow parse_row1(const std::string& line) {
  auto parts = split(line, '|');
  TableIRow r;
  r.no = std::stoi(parts[0]);
  r.phi = parts[1];
  r.tor = parts[2];
  for (auto& cls : split(parts[3], ';')) {
    TableIClass tc;
    for (auto& f : split(cls, '+')) {
      auto nums = split(f, ',');
      tc.forms.push_back(BinaryForm{Int(nums[0]), Int(nums[1]), Int(nums[2])});
      tc.rc.push_back({std::stol(nums[3]), std::stol(nums[4])});
    }
    r.classes.push_back(tc);
  }
  return r;
}

TableIIRow parse_row2(const std::string& line) {
  auto parts = split(line, '|');
  TableIIRow r;
  r.no = std::stoi(parts[0]);
  r.rank = std::stoi(parts[1]);
  r.phi = parts[2];
  r.tor = parts[3];
  for (auto& c : split(parts[4], ',')) r.counts.push_back(std::stol(c));
  return r;
}

}  // namespace

const std::vector<TableIRow>& table1() {
  static std::vector<TableIRow> rows = [] {
    std::vector<TableIRow> v;
    for (auto* s : kTable1) v.push_back(parse_row1(s));
    return v;
  }();
  return rows;
}

const std::vector<TableIIRow>& table2() {
  static std::vector<TableIIRow> rows = [] {
    std::vector<TableIIRow> v;
    for (auto* s : kTable2) v.push_back(parse_row2(s));
    return v;
  }();
  return rows;
}

namespace {

// canonical string for one class content: sorted "a,b,c:r,c" entries
std::string class_content(const std::vector<BinaryForm>& forms,
                          const std::vector<std::pair<long, long>>& rc) {
  std::vector<std::string> items;
  for (size_t i = 0; i < forms.size(); ++i) {
    std::ostringstream os;
    os << forms[i].a.get_str() << "," << forms[i].b.get_str() << "," << forms[i].c.get_str()
       << ":" << rc[i].first << "," << rc[i].second;
    items.push_back(os.str());
  }
  std::sort(items.begin(), items.end());
  std::string out;
  for (auto& s : items) { out += s; out += " "; }
  return out;
}

}  // namespace

std::vector<std::string> check_table1_row(const TableIRow& row, const ComponentReport* pre) {
  std::vector<std::string> diffs;
  ComponentReport rep =
      pre ? *pre : compute_components(row.phi, parse_torsion(row.tor), MarkingGroupSpec::full());
  if (!rep.realized) {
    diffs.push_back("row " + std::to_string(row.no) + ": not realized at lattice level");
    return diffs;
  }
  std::vector<std::string> got, want;
  for (auto& cl : rep.classes) got.push_back(class_content(cl.forms, cl.rc));
  for (auto& cl : row.classes) want.push_back(class_content(cl.forms, cl.rc));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got != want) {
    std::string g, w;
    for (auto& s : got) g += "{" + s + "}";
    for (auto& s : want) w += "{" + s + "}";
    diffs.push_back("row " + std::to_string(row.no) + " (" + row.phi + "): computed " + g +
                    " expected " + w);
  }
  return diffs;
}

std::vector<std::string> check_table2_row(const TableIIRow& row, const ComponentReport* pre) {
  std::vector<std::string> diffs;
  ComponentReport rep =
      pre ? *pre : compute_components(row.phi, parse_torsion(row.tor), MarkingGroupSpec::full());
  if (!rep.realized) {
    diffs.push_back("row " + std::to_string(row.no) + ": not realized at lattice level");
    return diffs;
  }
  AdeConfiguration phi = root_lattice_from_ade(row.phi);
  if (phi.rank() != row.rank)
    diffs.push_back("row " + std::to_string(row.no) + ": rank " + std::to_string(phi.rank()) +
                    " != " + std::to_string(row.rank));
  std::vector<long> got;
  for (auto& cl : rep.classes) got.push_back(long(to_long(cl.count)));
  std::sort(got.begin(), got.end());
  auto want = row.counts;
  std::sort(want.begin(), want.end());
  if (got != want) {
    std::ostringstream os;
    os << "row " << row.no << " (" << row.phi << "): computed [";
    for (size_t i = 0; i < got.size(); ++i) os << (i ? "," : "") << got[i];
    os << "] expected [";
    for (size_t i = 0; i < want.size(); ++i) os << (i ? "," : "") << want[i];
    os << "]";
    diffs.push_back(os.str());
  }
  return diffs;
}

std::string format_table1_row(const TableIRow& row) {
  std::ostringstream os;
  bool first_line = true;
  for (size_t c = 0; c < row.classes.size(); ++c) {
    for (size_t i = 0; i < row.classes[c].forms.size(); ++i) {
      auto& f = row.classes[c].forms[i];
      auto& rc = row.classes[c].rc[i];
      if (!first_line) os << "\n";
      first_line = false;
      os << row.no << "\t" << row.phi << "\t" << row.tor << "\t[" << f.a.get_str() << ","
         << f.b.get_str() << "," << f.c.get_str() << "]\t[" << rc.first << "," << rc.second
         << "]" << (row.classes.size() > 1 && i + 1 == row.classes[c].forms.size() &&
                            c + 1 < row.classes.size()
                        ? "\t#algebraic-class-boundary"
                        : "");
    }
  }
  return os.str();
}

std::string format_table2_row(const TableIIRow& row) {
  std::ostringstream os;
  os << row.no << "\t" << row.rank << "\t" << row.phi << "\t" << row.tor << "\t[";
  for (size_t i = 0; i < row.counts.size(); ++i) os << (i ? "," : "") << row.counts[i];
  os << "]";
  return os.str();
}

}  // namespace k3
