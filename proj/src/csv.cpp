#include "exhand/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "exhand/error.hpp"

namespace exhand {

namespace {

constexpr std::string_view kDropColumns = "t,q,qdot,F_des,I_des,c,F_mon";
constexpr std::string_view kBilateralColumns = "t,q,qdot,F_des,I_des,c,F_mon,d,q_lim";

void put(std::string& s, double v) {
  if (std::isnan(v)) {
    s += "nan";
    return;
  }
  // shortest form that reads back to the same double
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  s.append(buf, res.ptr);
}

void write_header(std::ostream& out, const CsvHeader& header) {
  for (const auto& [k, v] : header) out << "# " << k << " = " << v << '\n';
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> f;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    f.push_back(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return f;
}

double field(std::string_view s, std::size_t line, const char* name) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw CsvError("line " + std::to_string(line) + ": column " + name + ": not a number: '" +
                   std::string(s) + "'");
  }
  return v;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch == '\n' ? ' ' : ch;
  }
  return q + '"';
}

}  // namespace

void write_log_csv(std::ostream& out, const RunLog& log) {
  write_header(out, log.header);
  const bool bil = log.kind == LogKind::kBilateral;
  out << (bil ? kBilateralColumns : kDropColumns) << '\n';
  std::string row;
  for (const LogRecord& r : log.records) {
    row.clear();
    put(row, r.t);
    row += ',';
    put(row, r.q);
    row += ',';
    put(row, r.qdot);
    row += ',';
    put(row, r.F_des);
    row += ',';
    put(row, r.I_des);
    row += r.c ? ",1," : ",0,";
    put(row, r.F_mon);
    if (bil) {
      row += ',';
      put(row, r.d);
      row += ',';
      put(row, r.q_lim);
    }
    row += '\n';
    out << row;
  }
}

void write_log_csv(const std::filesystem::path& path, const RunLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CsvError("cannot open " + path.string() + " for writing");
  write_log_csv(out, log);
  if (!out) throw CsvError("write failed: " + path.string());
}

RunLog read_log_csv(std::istream& in) {
  RunLog log;
  std::string line;
  std::size_t line_no = 0;
  bool have_columns = false;
  std::size_t width = 0;
  static const char* const names[] = {"t", "q", "qdot", "F_des", "I_des", "c", "F_mon", "d", "q_lim"};
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_columns) {
      if (line.starts_with("#")) {
        const std::string_view body = std::string_view(line).substr(1);
        const auto eq = body.find(" = ");
        if (eq == std::string_view::npos) continue;  // free-form comment
        auto key = body.substr(0, eq);
        if (key.starts_with(' ')) key.remove_prefix(1);
        log.header.emplace_back(std::string(key), std::string(body.substr(eq + 3)));
        continue;
      }
      if (line == kDropColumns) {
        log.kind = LogKind::kDrop;
        width = 7;
      } else if (line == kBilateralColumns) {
        log.kind = LogKind::kBilateral;
        width = 9;
      } else {
        throw CsvError("line " + std::to_string(line_no) + ": unexpected column header '" + line + "'");
      }
      have_columns = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != width) {
      throw CsvError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                     " fields, got " + std::to_string(f.size()));
    }
    LogRecord r;
    r.t = field(f[0], line_no, names[0]);
    r.q = field(f[1], line_no, names[1]);
    r.qdot = field(f[2], line_no, names[2]);
    r.F_des = field(f[3], line_no, names[3]);
    r.I_des = field(f[4], line_no, names[4]);
    if (f[5] == "1") r.c = true;
    else if (f[5] == "0") r.c = false;
    else throw CsvError("line " + std::to_string(line_no) + ": column c: expected 0 or 1");
    r.F_mon = field(f[6], line_no, names[6]);
    if (width == 9) {
      r.d = field(f[7], line_no, names[7]);
      r.q_lim = field(f[8], line_no, names[8]);
    }
    log.records.push_back(r);
  }
  if (!have_columns) throw CsvError("no column header found");
  return log;
}

RunLog read_log_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot open " + path.string());
  try {
    return read_log_csv(in);
  } catch (const CsvError& e) {
    throw CsvError(path.string() + ": " + e.what());
  }
}

void write_sweep_cells_csv(std::ostream& out, const SweepReport& rep, const CsvHeader& header) {
  write_header(out, header);
  out << "index,f,k,b,status,stiffness,note\n";
  std::string row;
  for (const SweepCell& c : rep.cells) {
    row = std::to_string(c.index) + ',';
    put(row, c.f);
    row += ',';
    put(row, c.k);
    row += ',';
    put(row, c.b);
    row += ',' + to_string(c.status) + ',';
    if (c.stiffness) put(row, *c.stiffness);
    row += ',' + quote(c.note) + '\n';
    out << row;
  }
}

void write_sweep_summary_csv(std::ostream& out, const SweepReport& rep, const CsvHeader& header) {
  write_header(out, header);
  out << "Frequency,k,b,Stiffness,max_stable_k_b0,reference_k,reference_b,reference_stiffness\n";
  std::string row;
  for (const FrequencySummary& s : rep.summary) {
    row.clear();
    put(row, s.f);
    row += ',';
    if (s.best_stiffness) {
      put(row, s.best_k);
      row += ',';
      put(row, s.best_b);
      row += ',';
      put(row, *s.best_stiffness);
    } else {
      row += ",,";
    }
    row += ',';
    if (s.max_stable_k_b0) put(row, *s.max_stable_k_b0);
    row += ',';
    const HardwareReference* ref = nullptr;
    for (const auto& h : kHardwareReference) {
      if (h.f == s.f) ref = &h;
    }
    if (ref) {
      put(row, ref->k);
      row += ',';
      put(row, ref->b);
      row += ',';
      put(row, ref->stiffness);
    } else {
      row += ",,";
    }
    row += '\n';
    out << row;
  }
}

}  // namespace exhand
