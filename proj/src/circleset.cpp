#include "dioph/circleset.hpp"

#include <algorithm>
#include <stdexcept>

namespace dioph {

namespace {

// Appends to a sorted output, merging with the last arc when they overlap or touch.
void append_merging(std::vector<Arc>& out, const Arc& arc) {
  if (!out.empty() && arc.lo <= out.back().hi) {
    if (arc.hi > out.back().hi) out.back().hi = arc.hi;
    return;
  }
  out.push_back(arc);
}

}  // namespace

CircleIntervalSet CircleIntervalSet::full() {
  return CircleIntervalSet(std::vector<Arc>{Arc{Rational(0), Rational(1)}});
}

CircleIntervalSet CircleIntervalSet::normalize(std::vector<Arc> raw) {
  std::vector<Arc> pieces;
  pieces.reserve(raw.size() + 1);
  for (auto& arc : raw) {
    if (arc.lo >= arc.hi) throw std::domain_error("arc with lo >= hi");
    if (arc.hi - arc.lo >= 1) return full();
    Integer shift;
    mpz_fdiv_q(shift.get_mpz_t(), arc.lo.get_num_mpz_t(), arc.lo.get_den_mpz_t());
    Rational lo = arc.lo - shift;
    Rational hi = arc.hi - shift;
    if (hi <= 1) {
      pieces.push_back({std::move(lo), std::move(hi)});
    } else {
      pieces.push_back({std::move(lo), Rational(1)});
      pieces.push_back({Rational(0), hi - 1});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
  std::vector<Arc> out;
  out.reserve(pieces.size());
  for (const auto& arc : pieces) append_merging(out, arc);
  return CircleIntervalSet(std::move(out));
}

Rational CircleIntervalSet::measure() const {
  std::vector<Rational> lengths;
  lengths.reserve(arcs_.size());
  for (const auto& arc : arcs_) lengths.push_back(arc.hi - arc.lo);
  return exact_sum(std::move(lengths));
}

bool CircleIntervalSet::contains(const CircleIntervalSet& other) const {
  std::size_t i = 0;
  for (const auto& arc : other.arcs_) {
    while (i < arcs_.size() && arcs_[i].hi < arc.hi) ++i;
    if (i == arcs_.size() || arcs_[i].lo > arc.lo) return false;
  }
  return true;
}

std::string CircleIntervalSet::dump() const {
  std::string out;
  for (const auto& arc : arcs_) {
    out += to_string(arc.lo);
    out += ' ';
    out += to_string(arc.hi);
    out += '\n';
  }
  return out;
}

CircleIntervalSet unite(const CircleIntervalSet& a, const CircleIntervalSet& b) {
  std::vector<Arc> out;
  out.reserve(a.arcs_.size() + b.arcs_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.arcs_.size() || j < b.arcs_.size()) {
    const bool take_a = j == b.arcs_.size() || (i < a.arcs_.size() && a.arcs_[i].lo <= b.arcs_[j].lo);
    append_merging(out, take_a ? a.arcs_[i++] : b.arcs_[j++]);
  }
  return CircleIntervalSet(std::move(out));
}

CircleIntervalSet intersect(const CircleIntervalSet& a, const CircleIntervalSet& b) {
  std::vector<Arc> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.arcs_.size() && j < b.arcs_.size()) {
    const Arc& x = a.arcs_[i];
    const Arc& y = b.arcs_[j];
    const Rational& lo = x.lo < y.lo ? y.lo : x.lo;
    const Rational& hi = x.hi < y.hi ? x.hi : y.hi;
    if (lo < hi) out.push_back({lo, hi});
    if (x.hi < y.hi)
      ++i;
    else
      ++j;
  }
  return CircleIntervalSet(std::move(out));
}

CircleIntervalSet unite_all(std::vector<CircleIntervalSet> sets) {
  if (sets.empty()) return {};
  while (sets.size() > 1) {
    std::size_t out = 0;
    for (std::size_t i = 0; i + 1 < sets.size(); i += 2) sets[out++] = unite(sets[i], sets[i + 1]);
    if (sets.size() % 2 == 1) sets[out++] = std::move(sets.back());
    sets.resize(out);
  }
  return std::move(sets.front());
}

}  // namespace dioph
