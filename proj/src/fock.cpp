#include "hqs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hqs {

std::string to_string(const Determinant& d, int norb) {
  std::string s;
  for (int p = 2 * norb - 1; p >= 0; --p) s += d.occupied(p) ? '1' : '0';
  return s;
}

namespace {

// All norb-bit masks with k bits set, ascending.
std::vector<uint64_t> combinations(int norb, int k) {
  std::vector<uint64_t> out;
  if (k < 0 || k > norb) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  uint64_t v = (uint64_t{1} << k) - 1;
  const uint64_t limit = norb >= 64 ? ~uint64_t{0} : (uint64_t{1} << norb);
  while (norb >= 64 || v < limit) {
    out.push_back(v);
    if (v == 0) break;
    uint64_t t = v | (v - 1);
    uint64_t next = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    if (next <= v || (norb < 64 && next >= limit)) break;
    v = next;
  }
  return out;
}

Determinant interleave(uint64_t up, uint64_t down, int norb) {
  Determinant d;
  for (int s = 0; s < norb; ++s) {
    if ((up >> s) & 1u) d.flip(2 * s);
    if ((down >> s) & 1u) d.flip(2 * s + 1);
  }
  return d;
}

}  // namespace

SectorPtr enumerate_sector(int norb, int n_up, int n_down) {
  if (norb < 1 || norb > 64)
    throw std::invalid_argument("norb out of supported range [1, 64]");
  if (n_up < 0 || n_up > norb || n_down < 0 || n_down > norb)
    throw std::invalid_argument("electron counts out of range");
  auto sec = std::make_shared<Sector>();
  sec->norb = norb;
  sec->n_up = n_up;
  sec->n_down = n_down;
  auto ups = combinations(norb, n_up);
  auto downs = combinations(norb, n_down);
  sec->dets.reserve(ups.size() * downs.size());
  for (auto u : ups)
    for (auto d : downs) sec->dets.push_back(interleave(u, d, norb));
  std::sort(sec->dets.begin(), sec->dets.end());
  sec->index.reserve(sec->dets.size() * 2);
  for (size_t i = 0; i < sec->dets.size(); ++i) sec->index[sec->dets[i]] = i;
  return sec;
}

std::optional<LadderResult> apply_ladder(const Determinant& d, LadderKind kind, int p) {
  const bool occ = d.occupied(p);
  if ((kind == LadderKind::create) == occ) return std::nullopt;
  LadderResult r{d, d.count_below(p) % 2 == 0 ? 1 : -1};
  r.det.flip(p);
  return r;
}

int ExcitationOperator::delta_up() const {
  int n = 0;
  for (const auto& f : factors)
    if (f.spin_orbital % 2 == 0) n += f.kind == LadderKind::create ? 1 : -1;
  return n;
}

int ExcitationOperator::delta_down() const {
  int n = 0;
  for (const auto& f : factors)
    if (f.spin_orbital % 2 == 1) n += f.kind == LadderKind::create ? 1 : -1;
  return n;
}

ExcitationOperator ExcitationOperator::parse(const std::string& text) {
  ExcitationOperator op;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
      throw std::invalid_argument("bad excitation factor '" + tok + "'");
    LadderKind kind = tok[0] == '+' ? LadderKind::create : LadderKind::annihilate;
    std::string body = tok.substr(1);
    int spatial;
    int spin = 0;  // shorthand +k = (spatial k, up)
    auto dot = body.find('.');
    try {
      if (dot == std::string::npos) {
        spatial = std::stoi(body);
      } else {
        spatial = std::stoi(body.substr(0, dot));
        std::string s = body.substr(dot + 1);
        if (s == "u")
          spin = 0;
        else if (s == "d")
          spin = 1;
        else
          throw std::invalid_argument("spin must be u or d");
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad excitation factor '" + tok + "'");
    }
    if (spatial < 0 || spatial >= 64)
      throw std::invalid_argument("orbital index out of range in '" + tok + "'");
    op.factors.push_back({kind, 2 * spatial + spin});
  }
  if (op.factors.empty())
    throw std::invalid_argument("excitation operator has no factors");
  return op;
}

std::string ExcitationOperator::to_text() const {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += ' ';
    out += f.kind == LadderKind::create ? '+' : '-';
    out += std::to_string(f.spin_orbital / 2);
    out += f.spin_orbital % 2 == 0 ? ".u" : ".d";
  }
  return out;
}

std::unordered_map<Determinant, cplx, DeterminantHash> apply_excitation_raw(
    const ExcitationOperator& op, const SectorWaveFunction& psi) {
  std::unordered_map<Determinant, cplx, DeterminantHash> cur;
  const auto& dets = psi.sector->dets;
  for (size_t i = 0; i < dets.size(); ++i)
    if (psi.amps[i] != cplx{0.0}) cur.emplace(dets[i], psi.amps[i]);
  for (auto it = op.factors.rbegin(); it != op.factors.rend(); ++it) {
    std::unordered_map<Determinant, cplx, DeterminantHash> next;
    next.reserve(cur.size());
    for (const auto& [det, amp] : cur) {
      auto r = apply_ladder(det, it->kind, it->spin_orbital);
      if (!r) continue;
      next[r->det] += static_cast<double>(r->sign) * amp;
    }
    cur = std::move(next);
  }
  return cur;
}

std::pair<SectorWaveFunction, double> apply_excitation(const ExcitationOperator& op,
                                                       const SectorWaveFunction& psi) {
  auto raw = apply_excitation_raw(op, psi);
  const auto& src = *psi.sector;
  auto target = enumerate_sector(src.norb, src.n_up + op.delta_up(),
                                 src.n_down + op.delta_down());
  SectorWaveFunction out{target, VectorXc::Zero(static_cast<Eigen::Index>(target->size()))};
  double norm2 = 0.0;
  for (const auto& [det, amp] : raw) {
    auto idx = target->find(det);
    if (!idx)
      throw std::logic_error("excitation produced determinant outside target sector");
    out.amps[static_cast<Eigen::Index>(*idx)] = amp;
    norm2 += std::norm(amp);
  }
  if (norm2 < 1e-14)
    throw ZeroPerturbationError("excitation operator annihilates the state");
  out.amps /= std::sqrt(norm2);
  return {std::move(out), norm2};
}

}  // namespace hqs
