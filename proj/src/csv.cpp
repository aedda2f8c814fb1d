#include "metasim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace metasim {

const char* const kTimeSeriesHeader =
    "t_s,dT_outer_K,dT_inner_K,tip_disp_mm,ref_disp_mm,kappa_fit_per_cm,"
    "P_outer_W,P_inner_W";

std::string format_g9(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite CSV value");
  if (v == 0) v = 0;  // normalize -0
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string records_to_csv(const std::vector<TimeSeriesRecord>& records) {
  std::string out = kTimeSeriesHeader;
  out += '\n';
  for (const auto& r : records) {
    out += format_g9(r.t);
    out += ',';
    out += format_g9(r.dT_outer);
    out += ',';
    out += format_g9(r.dT_inner);
    out += ',';
    out += format_g9(r.tip_disp_mm);
    out += ',';
    out += format_g9(r.ref_disp_mm);
    out += ',';
    out += format_g9(r.kappa_fit_per_cm);
    out += ',';
    out += format_g9(r.p_outer_w);
    out += ',';
    out += format_g9(r.p_inner_w);
    out += '\n';
  }
  return out;
}

std::string summary_to_csv(
    const std::vector<std::pair<std::string, double>>& summary) {
  std::string out = "metric,value\n";
  for (const auto& [name, value] : summary) {
    out += name;
    out += ',';
    out += format_g9(value);
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                (unsigned long long)fnv1a64(data));
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), (std::streamsize)content.size());
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string manifest_to_text(const std::vector<ManifestEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.digest;
    out += "  ";
    out += e.name;
    out += '\n';
  }
  return out;
}

}  // namespace metasim
