#include "superteach/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace superteach {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_data_csv(const TrainingSet& s, std::ostream& os) {
  const bool labeled = !s.examples.empty() && s.examples.front().y.has_value();
  for (int j = 0; j < s.d; ++j) os << (j ? "," : "") << "x" << j;
  if (labeled) os << ",y";
  os << "\n";
  for (const auto& ex : s.examples) {
    for (int j = 0; j < s.d; ++j)
      os << (j ? "," : "") << format_double(ex.x[j]);
    if (labeled) {
      if (!ex.y) throw std::invalid_argument("write_data_csv: mixed labeling");
      os << "," << format_double(*ex.y);
    }
    os << "\n";
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TrainingSet read_data_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("read_data_csv: empty file");
  const auto header = split_csv(line);
  bool labeled = false;
  int d = 0;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "y") {
      if (i + 1 != header.size())
        throw std::invalid_argument("read_data_csv: y must be the last column");
      labeled = true;
    } else if (header[i] == "x" + std::to_string(i)) {
      ++d;
    } else {
      throw std::invalid_argument("read_data_csv: unexpected column '" +
                                  header[i] + "'");
    }
  }
  if (d == 0) throw std::invalid_argument("read_data_csv: no feature columns");

  TrainingSet s;
  s.d = d;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (static_cast<int>(fields.size()) != d + (labeled ? 1 : 0))
      throw std::invalid_argument("read_data_csv: wrong field count");
    Example ex;
    ex.x.resize(d);
    for (int j = 0; j < d; ++j) ex.x[j] = std::stod(fields[static_cast<size_t>(j)]);
    if (labeled) ex.y = std::stod(fields[static_cast<size_t>(d)]);
    s.examples.push_back(std::move(ex));
  }
  return s;
}

void write_results_csv(const std::vector<TrialRecord>& records,
                       const std::string& task_name,
                       const std::string& teacher_name, std::ostream& os) {
  os << "task,teacher,n,d,trial,seed,risk_full,risk_subset,ratio,"
        "subset_size,wall_ms,error\n";
  for (const auto& r : records) {
    std::string err = r.error;
    for (char& c : err)
      if (c == ',' || c == '\n') c = ';';
    os << task_name << "," << teacher_name << "," << r.n << "," << r.d << ","
       << r.trial_index << "," << r.seed << ",";
    if (r.error.empty()) {
      os << format_double(r.risk_full) << "," << format_double(r.risk_subset)
         << ","
         << (std::isfinite(r.ratio) ? format_double(r.ratio) : std::string())
         << ","
         << static_cast<int>(std::lround(r.subset_fraction * r.n)) << ",";
    } else {
      os << ",,,,";
    }
    os << format_double(r.wall_ms) << "," << err << "\n";
  }
}

std::vector<TrialRecord> read_results_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("read_results_csv: empty file");
  const std::string expected =
      "task,teacher,n,d,trial,seed,risk_full,risk_subset,ratio,"
      "subset_size,wall_ms,error";
  std::string header = line;
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header != expected)
    throw std::invalid_argument("read_results_csv: unexpected header");

  std::vector<TrialRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 12)
      throw std::invalid_argument("read_results_csv: wrong field count");
    TrialRecord r;
    r.n = std::stoi(f[2]);
    r.d = std::stoi(f[3]);
    r.trial_index = std::stoi(f[4]);
    r.seed = std::stoull(f[5]);
    r.error = f[11];
    if (r.error.empty()) {
      r.risk_full = std::stod(f[6]);
      r.risk_subset = std::stod(f[7]);
      r.ratio = f[8].empty() ? std::numeric_limits<double>::quiet_NaN()
                             : std::stod(f[8]);
      r.subset_fraction = r.n > 0 ? std::stod(f[9]) / r.n : 0.0;
    } else {
      r.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    r.wall_ms = std::stod(f[10]);
    records.push_back(std::move(r));
  }
  return records;
}

void write_medians_csv(const std::vector<SummaryRow>& rows, std::ostream& os) {
  os << "n_or_d,median_ratio,median_subset_fraction,median_time_s\n";
  for (const auto& row : rows) {
    os << row.key << "," << format_double(row.median_ratio) << ","
       << format_double(row.median_subset_fraction) << ","
       << format_double(row.median_time_s) << "\n";
  }
}

}  // namespace superteach
