#include "hqs/fcidump.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hqs {

void IntegralTable::set_two(int p, int q, int r, int s, double v) {
  const int n = norb;
  auto at = [&](int a, int b, int c, int d) -> double& {
    return h2[((a * n + b) * n + c) * n + d];
  };
  at(p, q, r, s) = v;
  at(q, p, r, s) = v;
  at(p, q, s, r) = v;
  at(q, p, s, r) = v;
  at(r, s, p, q) = v;
  at(s, r, p, q) = v;
  at(r, s, q, p) = v;
  at(s, r, q, p) = v;
}

namespace {

// Fortran-style float: accepts D/d exponent markers.
bool parse_value(std::string tok, double& out) {
  for (auto& c : tok)
    if (c == 'D' || c == 'd') c = 'E';
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end && *end == '\0' && end != tok.c_str();
}

bool parse_int(const std::string& tok, long& out) {
  char* end = nullptr;
  out = std::strtol(tok.c_str(), &end, 10);
  return end && *end == '\0' && end != tok.c_str();
}

}  // namespace

IntegralTable parse_fcidump(std::istream& in) {
  IntegralTable t;
  std::string header;
  int line_no = 0;
  // Header namelist runs until &END or a bare '/'.
  bool header_done = false;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    header += " " + line;
    auto up = header;
    std::transform(up.begin(), up.end(), up.begin(), ::toupper);
    if (up.find("&END") != std::string::npos ||
        header.find('/') != std::string::npos) {
      header_done = true;
      break;
    }
  }
  if (!header_done) throw ParseError("missing &END terminator in header", line_no);

  std::string up = header;
  std::transform(up.begin(), up.end(), up.begin(), ::toupper);
  if (up.find("&FCI") == std::string::npos)
    throw ParseError("missing &FCI namelist", 1);

  auto field = [&](const std::string& key) -> std::string {
    auto pos = up.find(key + "=");
    if (pos == std::string::npos) return {};
    pos += key.size() + 1;
    std::string out;
    while (pos < up.size()) {
      char c = up[pos];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '&' || c == '/')
        break;
      // a comma followed by a letter starts the next key
      if (c == ',' && pos + 1 < up.size() &&
          std::isalpha(static_cast<unsigned char>(up[pos + 1])))
        break;
      out += c;
      ++pos;
    }
    while (!out.empty() && out.back() == ',') out.pop_back();
    return out;
  };

  long norb = 0, nelec = 0, ms2 = 0;
  if (!parse_int(field("NORB"), norb) || norb <= 0)
    throw ParseError("malformed or missing NORB in header", 1);
  if (!parse_int(field("NELEC"), nelec))
    throw ParseError("malformed or missing NELEC in header", 1);
  std::string ms2s = field("MS2");
  if (!ms2s.empty() && !parse_int(ms2s, ms2))
    throw ParseError("malformed MS2 in header", 1);

  if (nelec <= 0 || nelec > 2 * norb)
    throw ParseError("NELEC out of range for NORB", 1);
  if (std::abs(ms2) > nelec || (nelec + ms2) % 2 != 0)
    throw ParseError("MS2 inconsistent with NELEC", 1);

  t.norb = static_cast<int>(norb);
  t.nelec = static_cast<int>(nelec);
  t.ms2 = static_cast<int>(ms2);
  t.h1.assign(static_cast<size_t>(norb) * norb, 0.0);
  t.h2.assign(static_cast<size_t>(norb) * norb * norb * norb, 0.0);

  std::string orbsym = field("ORBSYM");
  if (!orbsym.empty()) {
    std::stringstream ss(orbsym);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) t.orbsym.push_back(static_cast<int>(std::stol(item)));
  }
  long isym = 1;
  if (!field("ISYM").empty() && parse_int(field("ISYM"), isym))
    t.isym = static_cast<int>(isym);

  // Records: value i j k l
  std::string tok;
  std::vector<std::string> toks;
  while (std::getline(in, line)) {
    ++line_no;
    std::stringstream ss(line);
    toks.clear();
    while (ss >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks.size() != 5)
      throw ParseError("expected 'value i j k l' record", line_no);
    double v;
    if (!parse_value(toks[0], v))
      throw ParseError("non-numeric integral value '" + toks[0] + "'", line_no);
    std::array<long, 4> ix{};
    for (int k = 0; k < 4; ++k) {
      if (!parse_int(toks[k + 1], ix[k]))
        throw ParseError("non-integer orbital index '" + toks[k + 1] + "'", line_no);
      if (ix[k] < 0 || ix[k] > norb)
        throw ParseError("orbital index " + std::to_string(ix[k]) +
                             " out of [0, NORB]", line_no);
    }
    const auto [i, j, k, l] = ix;
    if (i > 0 && j > 0 && k > 0 && l > 0) {
      t.set_two(static_cast<int>(i) - 1, static_cast<int>(j) - 1,
                static_cast<int>(k) - 1, static_cast<int>(l) - 1, v);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      t.set_one(static_cast<int>(i) - 1, static_cast<int>(j) - 1, v);
    } else if (i == 0 && j == 0 && k == 0 && l == 0) {
      t.e_core = v;
    } else {
      throw ParseError("unrecognized index pattern", line_no);
    }
  }
  return t;
}

IntegralTable parse_fcidump_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open FCIDUMP file: " + path);
  return parse_fcidump(f);
}

std::string serialize_fcidump(const IntegralTable& t) {
  std::string out;
  char buf[128];
  out += "&FCI NORB=" + std::to_string(t.norb) +
         ",NELEC=" + std::to_string(t.nelec) + ",MS2=" + std::to_string(t.ms2) + ",\n";
  if (!t.orbsym.empty()) {
    out += " ORBSYM=";
    for (size_t i = 0; i < t.orbsym.size(); ++i)
      out += (i ? "," : "") + std::to_string(t.orbsym[i]);
    out += ",\n";
  }
  out += " ISYM=" + std::to_string(t.isym) + ",\n&END\n";
  auto rec = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%23.16E %4d %4d %4d %4d\n", v, i, j, k, l);
    out += buf;
  };
  const int n = t.norb;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= (r == p ? q : r); ++s) {
          double v = t.two(p, q, r, s);
          if (v != 0.0) rec(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (t.one(p, q) != 0.0) rec(t.one(p, q), p + 1, q + 1, 0, 0);
  rec(t.e_core, 0, 0, 0, 0);
  return out;
}

namespace {

// 64-bit FNV-1a over raw bytes.
struct Fnv {
  uint64_t h = 1469598103934665603ull;
  void feed(const void* data, size_t n) {
    auto p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  }
  void feed_d(double v) { feed(&v, sizeof v); }
  void feed_i(int64_t v) { feed(&v, sizeof v); }
};

}  // namespace

std::string table_checksum(const IntegralTable& t) {
  Fnv f;
  f.feed_i(t.norb);
  f.feed_i(t.nelec);
  f.feed_i(t.ms2);
  f.feed_d(t.e_core);
  const int n = t.norb;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      double v = t.one(p, q);
      if (v != 0.0) {
        f.feed_i((p + 1) * 1000 + q + 1);
        f.feed_d(v);
      }
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= (r == p ? q : r); ++s) {
          double v = t.two(p, q, r, s);
          if (v != 0.0) {
            f.feed_i(((int64_t)p * n + q) * n * n + (int64_t)r * n + s);
            f.feed_d(v);
          }
        }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.h));
  return buf;
}

}  // namespace hqs
