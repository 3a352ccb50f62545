#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqs {

/// One- and two-electron integrals in the molecular-orbital basis.
/// h2 is stored fully expanded in chemists' notation (pq|rs) so lookups are
/// a plain 4-index read; parse_fcidump populates all 8 symmetry images.
struct IntegralTable {
  int norb = 0;
  int nelec = 0;
  int ms2 = 0;
  double e_core = 0.0;
  std::vector<double> h1;      // norb*norb, symmetric
  std::vector<double> h2;      // norb^4, chemists' (pq|rs)
  std::vector<int> orbsym;     // parsed, unused downstream
  int isym = 1;

  double one(int p, int q) const { return h1[p * norb + q]; }
  double two(int p, int q, int r, int s) const {
    return h2[((p * norb + q) * norb + r) * norb + s];
  }
  void set_one(int p, int q, double v) {
    h1[p * norb + q] = v;
    h1[q * norb + p] = v;
  }
  void set_two(int p, int q, int r, int s, double v);
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& what, int line_)
      : std::runtime_error(what + " (line " + std::to_string(line_) + ")"),
        line(line_) {}
};

IntegralTable parse_fcidump(std::istream& in);
IntegralTable parse_fcidump_file(const std::string& path);

/// Canonical text form; parse(serialize(t)) reproduces t bit-exactly.
std::string serialize_fcidump(const IntegralTable& t);

/// Deterministic content digest over canonically ordered nonzero integrals.
std::string table_checksum(const IntegralTable& t);

}  // namespace hqs
