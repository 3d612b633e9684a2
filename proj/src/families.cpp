#include "schemex/families.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>

namespace schemex {

const char* to_string(Family f) {
  switch (f) {
    case Family::Hamming: return "hamming";
    case Family::Johnson: return "johnson";
    case Family::Cycle: return "cycle";
    case Family::Complete: return "complete";
    case Family::DisjointCliques: return "disjoint_cliques";
    case Family::Cyclotomic13: return "cyclotomic13";
    case Family::Petersen: return "petersen";
    case Family::HypercubeReordered: return "hypercube_reordered";
  }
  return "?";
}

Family family_from_string(const std::string& tag) {
  for (auto f : {Family::Hamming, Family::Johnson, Family::Cycle, Family::Complete, Family::DisjointCliques,
                 Family::Cyclotomic13, Family::Petersen, Family::HypercubeReordered}) {
    if (tag == to_string(f)) return f;
  }
  throw FamilyError("unknown family '" + tag + "'");
}

namespace {

[[noreturn]] void out_of_range(const std::string& what) { throw FamilyError("ParamOutOfRange: " + what); }

void expect_params(const FamilySpec& spec, std::size_t count) {
  if (spec.params.size() != count) {
    out_of_range(std::string(to_string(spec.family)) + " takes " + std::to_string(count) + " parameter(s), got " +
                 std::to_string(spec.params.size()));
  }
}

void check_size(std::size_t n) {
  if (n > kMaxFamilyPoints) out_of_range("scheme would have " + std::to_string(n) + " points");
}

template <class F>
AssociationScheme tabulate(std::size_t n, std::size_t d, F&& rel) {
  std::vector<RelIndex> e(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) e[x * n + y] = static_cast<RelIndex>(rel(x, y));
  return build_scheme(RelationMatrix(n, d, std::move(e)));
}

AssociationScheme hamming(std::size_t len, std::size_t q) {
  if (len < 1 || q < 2) out_of_range("hamming needs n >= 1 and q >= 2");
  std::size_t points = 1;
  for (std::size_t i = 0; i < len; ++i) {
    points *= q;
    check_size(points);
  }
  // Word x has digit i equal to (x / q^(len-1-i)) % q; lexicographic order.
  std::vector<std::vector<std::size_t>> words(points, std::vector<std::size_t>(len));
  for (std::size_t x = 0; x < points; ++x) {
    std::size_t v = x;
    for (std::size_t i = len; i-- > 0;) {
      words[x][i] = v % q;
      v /= q;
    }
  }
  return tabulate(points, len, [&](std::size_t x, std::size_t y) {
    std::size_t dist = 0;
    for (std::size_t i = 0; i < len; ++i) dist += words[x][i] != words[y][i];
    return dist;
  });
}

AssociationScheme johnson(std::size_t v, std::size_t k) {
  if (v < 2 || k < 1 || k >= v || v > 63) out_of_range("johnson needs 1 <= k < v <= 63");
  std::vector<std::uint64_t> subsets;
  // Sorted k-subsets in lexicographic order of their element lists.
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (auto e : pick) mask |= std::uint64_t{1} << e;
    subsets.push_back(mask);
    check_size(subsets.size());
    std::size_t i = k;
    while (i-- > 0 && pick[i] == v - k + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++pick[i];
    for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  const std::size_t d = std::min(k, v - k);
  return tabulate(subsets.size(), d, [&](std::size_t x, std::size_t y) {
    return k - static_cast<std::size_t>(std::popcount(subsets[x] & subsets[y]));
  });
}

AssociationScheme cycle(std::size_t n) {
  if (n < 3) out_of_range("cycle needs n >= 3");
  check_size(n);
  return tabulate(n, n / 2, [&](std::size_t x, std::size_t y) {
    const std::size_t diff = x > y ? x - y : y - x;
    return std::min(diff, n - diff);
  });
}

AssociationScheme complete(std::size_t n) {
  if (n < 2) out_of_range("complete needs n >= 2");
  check_size(n);
  return tabulate(n, 1, [](std::size_t x, std::size_t y) { return x == y ? 0 : 1; });
}

AssociationScheme disjoint_cliques(std::size_t c, std::size_t m) {
  if (c < 2 || m < 2) out_of_range("disjoint_cliques needs c >= 2 and m >= 2");
  check_size(c * m);
  return tabulate(c * m, 2, [&](std::size_t x, std::size_t y) {
    if (x == y) return 0;
    return x / m == y / m ? 1 : 2;
  });
}

AssociationScheme cyclotomic13() {
  // Index of the class containing each nonzero residue mod 13.
  constexpr std::array<int, 13> cls{0, 1, 2, 2, 3, 1, 3, 3, 1, 3, 2, 2, 1};
  return tabulate(13, 3, [&](std::size_t x, std::size_t y) { return cls[(x + 13 - y) % 13]; });
}

}  // namespace

AssociationScheme generate(const FamilySpec& spec) {
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::Hamming: expect_params(spec, 2); return hamming(p[0], p[1]);
    case Family::Johnson: expect_params(spec, 2); return johnson(p[0], p[1]);
    case Family::Cycle: expect_params(spec, 1); return cycle(p[0]);
    case Family::Complete: expect_params(spec, 1); return complete(p[0]);
    case Family::DisjointCliques: expect_params(spec, 2); return disjoint_cliques(p[0], p[1]);
    case Family::Cyclotomic13: expect_params(spec, 0); return cyclotomic13();
    case Family::Petersen: {
      expect_params(spec, 0);
      const std::array<std::size_t, 3> swap{0, 2, 1};
      return reorder_relations(johnson(5, 2), swap);
    }
    case Family::HypercubeReordered: {
      expect_params(spec, 3);
      const std::array<std::size_t, 4> perm{0, p[0], p[1], p[2]};
      try {
        return reorder_relations(hamming(3, 2), perm);
      } catch (const SchemeError& e) {
        out_of_range(std::string("hypercube_reordered: ") + e.what());
      }
    }
  }
  throw FamilyError("unknown family");
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  auto add = [&](Family f, std::vector<std::size_t> params, Expected e) {
    std::string name = to_string(f);
    for (std::size_t i = 0; i < params.size(); ++i) name += (i ? "," : "(") + std::to_string(params[i]);
    if (!params.empty()) name += ")";
    out.push_back({std::move(name), {f, std::move(params)}, e});
  };
  for (std::size_t n = 5; n <= 12; ++n) add(Family::Cycle, {n}, Expected::Yes);
  for (std::size_t len = 1; len <= 4; ++len)
    for (std::size_t q = 2; q <= 3; ++q) add(Family::Hamming, {len, q}, Expected::Yes);
  for (std::size_t v = 4; v <= 8; ++v) add(Family::Johnson, {v, 2}, Expected::Yes);
  add(Family::Johnson, {7, 3}, Expected::Yes);
  for (std::size_t n = 2; n <= 6; ++n) add(Family::Complete, {n}, Expected::Yes);
  add(Family::Petersen, {}, Expected::Yes);
  add(Family::Cyclotomic13, {}, Expected::No);
  add(Family::DisjointCliques, {3, 3}, Expected::PreconditionFailed);
  add(Family::HypercubeReordered, {3, 2, 1}, Expected::PreconditionFailed);
  return out;
}

}  // namespace schemex
