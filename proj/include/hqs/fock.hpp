#pragma once

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hqs {

using cplx = std::complex<double>;
using VectorXc = Eigen::VectorXcd;

/// Occupation bitstring over spin-orbitals, capped at 128 (two words).
/// Spin-orbital index convention: p = 2*spatial + spin, spin 0 = up, 1 = down.
/// Canonical phase: |x> = prod_{p increasing} (c+_p)^{x_p} |vac>.
struct Determinant {
  uint64_t w0 = 0, w1 = 0;

  bool occupied(int p) const {
    return p < 64 ? (w0 >> p) & 1u : (w1 >> (p - 64)) & 1u;
  }
  void flip(int p) {
    if (p < 64)
      w0 ^= uint64_t{1} << p;
    else
      w1 ^= uint64_t{1} << (p - 64);
  }
  int popcount() const { return std::popcount(w0) + std::popcount(w1); }

  /// Number of occupied spin-orbitals with index < p.
  int count_below(int p) const {
    if (p <= 0) return 0;
    if (p <= 64) return std::popcount(w0 & ((p == 64 ? ~uint64_t{0} : (uint64_t{1} << p) - 1)));
    return std::popcount(w0) +
           std::popcount(w1 & ((p == 128 ? ~uint64_t{0} : (uint64_t{1} << (p - 64)) - 1)));
  }
  int count_up() const {
    constexpr uint64_t even = 0x5555555555555555ull;
    return std::popcount(w0 & even) + std::popcount(w1 & even);
  }
  int count_down() const {
    constexpr uint64_t odd = 0xAAAAAAAAAAAAAAAAull;
    return std::popcount(w0 & odd) + std::popcount(w1 & odd);
  }

  friend bool operator==(const Determinant&, const Determinant&) = default;
  friend auto operator<=>(const Determinant& a, const Determinant& b) {
    if (auto c = a.w1 <=> b.w1; c != 0) return c;
    return a.w0 <=> b.w0;
  }
};

struct DeterminantHash {
  size_t operator()(const Determinant& d) const {
    uint64_t h = d.w0 * 0x9E3779B97F4A7C15ull;
    h ^= d.w1 + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 32;
    return static_cast<size_t>(h);
  }
};

std::string to_string(const Determinant& d, int norb);

/// Fixed-(n_up, n_down) determinant space, lexicographically ordered.
struct Sector {
  int norb = 0, n_up = 0, n_down = 0;
  std::vector<Determinant> dets;
  std::unordered_map<Determinant, size_t, DeterminantHash> index;

  size_t size() const { return dets.size(); }
  std::optional<size_t> find(const Determinant& d) const {
    auto it = index.find(d);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

using SectorPtr = std::shared_ptr<const Sector>;

SectorPtr enumerate_sector(int norb, int n_up, int n_down);

struct SectorWaveFunction {
  SectorPtr sector;
  VectorXc amps;

  double norm2() const { return amps.squaredNorm(); }

  /// Amplitude on `d`, zero if `d` lies outside the sector.
  cplx amplitude(const Determinant& d) const {
    auto i = sector->find(d);
    return i ? amps[*i] : cplx{0.0, 0.0};
  }
};

enum class LadderKind { create, annihilate };

struct LadderResult {
  Determinant det;
  int sign;  // +1 or -1
};

/// Apply c+_p or c_p; nullopt means the state is annihilated.
std::optional<LadderResult> apply_ladder(const Determinant& d, LadderKind kind, int p);

/// Ordered product of ladder operators; factors apply right-to-left
/// (the last element of `factors` acts first).
struct ExcitationOperator {
  struct Factor {
    LadderKind kind;
    int spin_orbital;
  };
  std::vector<Factor> factors;

  int delta_up() const;
  int delta_down() const;

  /// Text syntax: whitespace-separated `+p.s` (create) / `-p.s` (annihilate),
  /// s in {u,d}; bare `+k` / `-k` is shorthand for (spatial k, up).
  static ExcitationOperator parse(const std::string& text);
  std::string to_text() const;
};

struct ZeroPerturbationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Returns normalized A|psi>/sqrt(<A+A>) and norm2 = <A+A>_psi.
std::pair<SectorWaveFunction, double> apply_excitation(const ExcitationOperator& op,
                                                       const SectorWaveFunction& psi);

/// Unnormalized application of `op` to `psi` as a sparse amplitude map.
std::unordered_map<Determinant, cplx, DeterminantHash> apply_excitation_raw(
    const ExcitationOperator& op, const SectorWaveFunction& psi);

}  // namespace hqs
