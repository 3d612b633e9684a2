#include "schemex/scheme.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <thread>

namespace schemex {

const char* to_string(SchemeErrc e) {
  switch (e) {
    case SchemeErrc::IndexOutOfRange: return "IndexOutOfRange";
    case SchemeErrc::ClassCountZero: return "ClassCountZero";
    case SchemeErrc::DiagonalNotZero: return "DiagonalNotZero";
    case SchemeErrc::NotSymmetric: return "NotSymmetric";
    case SchemeErrc::MissingRelation: return "MissingRelation";
    case SchemeErrc::NotConstant: return "NotConstant";
    case SchemeErrc::PermMovesZero: return "PermMovesZero";
    case SchemeErrc::InvalidPermutation: return "InvalidPermutation";
  }
  return "?";
}

SchemeError::SchemeError(SchemeErrc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

RelationMatrix::RelationMatrix(std::size_t n, std::size_t d, std::vector<RelIndex> entries)
    : n_(n), d_(d), rel_(std::move(entries)) {
  if (rel_.size() != n * n) {
    throw SchemeError(SchemeErrc::IndexOutOfRange,
                      "expected " + std::to_string(n * n) + " entries, got " +
                          std::to_string(rel_.size()));
  }
  for (std::size_t idx = 0; idx < rel_.size(); ++idx) {
    if (rel_[idx] > d) {
      std::ostringstream msg;
      msg << "entry (" << idx / n << "," << idx % n << ") = " << rel_[idx]
          << " exceeds class count d=" << d;
      throw SchemeError(SchemeErrc::IndexOutOfRange, msg.str());
    }
  }
}

IntersectionTensor::IntersectionTensor(std::size_t d, std::vector<std::int64_t> values)
    : d_(d), p_(std::move(values)) {
  if (p_.size() != (d + 1) * (d + 1) * (d + 1)) {
    throw std::invalid_argument("IntersectionTensor: wrong number of entries");
  }
}

std::vector<std::int64_t> IntersectionTensor::valencies() const {
  std::vector<std::int64_t> k(d_ + 1);
  for (std::size_t i = 0; i <= d_; ++i) k[i] = valency(i);
  return k;
}

IntMatrix IntersectionTensor::intersection_matrix(std::size_t i) const {
  IntMatrix b(d_ + 1, d_ + 1);
  for (std::size_t j = 0; j <= d_; ++j)
    for (std::size_t k = 0; k <= d_; ++k) b(j, k) = (*this)(i, j, k);
  return b;
}

namespace {

struct Pair {
  std::size_t x, y;
};

// Counts c[i*(d+1)+j] = #{z : rel(x,z)=i, rel(z,y)=j}.
class PairCounter {
 public:
  explicit PairCounter(const RelationMatrix& rm)
      : rm_(rm), width_(rm.d() + 1), counts_(width_ * width_, 0) {}

  const std::vector<std::int64_t>& count(std::size_t x, std::size_t y) {
    std::fill(counts_.begin(), counts_.end(), 0);
    const auto rx = rm_.row(x);
    for (std::size_t z = 0; z < rm_.n(); ++z) ++counts_[rx[z] * width_ + rm_(z, y)];
    return counts_;
  }

 private:
  const RelationMatrix& rm_;
  std::size_t width_;
  std::vector<std::int64_t> counts_;
};

struct Violation {
  Pair at;
  std::size_t i, j;
  std::int64_t got;
};

std::optional<Violation> scan_rows(const RelationMatrix& rm,
                                   const std::vector<std::vector<std::int64_t>>& reference,
                                   std::size_t row_begin, std::size_t row_end) {
  PairCounter counter(rm);
  const std::size_t w = rm.d() + 1;
  for (std::size_t x = row_begin; x < row_end; ++x) {
    for (std::size_t y = 0; y < rm.n(); ++y) {
      const auto& c = counter.count(x, y);
      const auto& ref = reference[rm(x, y)];
      for (std::size_t idx = 0; idx < c.size(); ++idx) {
        if (c[idx] != ref[idx]) return Violation{{x, y}, idx / w, idx % w, c[idx]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AssociationScheme::AssociationScheme(RelationMatrix rel, IntersectionTensor tensor)
    : rel_(std::move(rel)), tensor_(std::move(tensor)) {
  const std::size_t n = rel_.n();
  adjacency_.assign(rel_.d() + 1, IntMatrix::Zero(n, n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) adjacency_[rel_(x, y)](x, y) = 1;
  representative_.assign(rel_.d() + 1, n);
  for (std::size_t y = n; y-- > 0;) representative_[rel_(0, y)] = y;
}

AssociationScheme build_scheme(RelationMatrix rm, const BuildOptions& opts) {
  const std::size_t n = rm.n();
  const std::size_t d = rm.d();
  if (d == 0) throw SchemeError(SchemeErrc::ClassCountZero, "a scheme needs at least one non-identity relation");

  for (std::size_t x = 0; x < n; ++x) {
    if (rm(x, x) != 0) {
      std::ostringstream msg;
      msg << "R_0 must be the diagonal: rel(" << x << "," << x << ") = " << rm(x, x);
      throw SchemeError(SchemeErrc::DiagonalNotZero, msg.str());
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (rm(x, y) != rm(y, x)) {
        std::ostringstream msg;
        msg << "relations must be symmetric: rel(" << x << "," << y << ") = " << rm(x, y)
            << " but rel(" << y << "," << x << ") = " << rm(y, x);
        throw SchemeError(SchemeErrc::NotSymmetric, msg.str());
      }
    }
  }

  std::vector<std::optional<Pair>> first(d + 1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (!first[rm(x, y)]) first[rm(x, y)] = Pair{x, y};
  for (std::size_t i = 0; i <= d; ++i) {
    if (!first[i]) throw SchemeError(SchemeErrc::MissingRelation, "relation " + std::to_string(i) + " is empty");
  }

  std::vector<std::vector<std::int64_t>> reference(d + 1);
  {
    PairCounter counter(rm);
    for (std::size_t k = 0; k <= d; ++k) reference[k] = counter.count(first[k]->x, first[k]->y);
  }

  if (!opts.fast) {
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
    std::optional<Violation> found;
    if (workers == 1) {
      found = scan_rows(rm, reference, 0, n);
    } else {
      std::vector<std::optional<Violation>> partial(workers);
      {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
          const std::size_t lo = std::min(n, w * chunk);
          const std::size_t hi = std::min(n, lo + chunk);
          pool.emplace_back([&, w, lo, hi] { partial[w] = scan_rows(rm, reference, lo, hi); });
        }
      }
      // Lowest row first keeps the witness independent of the thread count.
      for (auto& p : partial) {
        if (p) {
          found = p;
          break;
        }
      }
    }
    if (found) {
      const auto& v = *found;
      const std::size_t k = rm(v.at.x, v.at.y);
      const Pair ref = *first[k];
      std::ostringstream msg;
      msg << "p^" << k << "_{" << v.i << "," << v.j << "} is not constant on R_" << k << ": pair ("
          << ref.x << "," << ref.y << ") gives " << reference[k][v.i * (d + 1) + v.j] << ", pair ("
          << v.at.x << "," << v.at.y << ") gives " << v.got;
      throw SchemeError(SchemeErrc::NotConstant, msg.str());
    }
  }

  std::vector<std::int64_t> p((d + 1) * (d + 1) * (d + 1));
  for (std::size_t k = 0; k <= d; ++k)
    std::copy(reference[k].begin(), reference[k].end(), p.begin() + k * (d + 1) * (d + 1));
  return AssociationScheme(std::move(rm), IntersectionTensor(d, std::move(p)));
}

AssociationScheme reorder_relations(const AssociationScheme& s, std::span<const std::size_t> perm) {
  const std::size_t d = s.d();
  if (perm.size() != d + 1) {
    throw SchemeError(SchemeErrc::InvalidPermutation,
                      "permutation must have " + std::to_string(d + 1) + " entries");
  }
  if (perm[0] != 0) throw SchemeError(SchemeErrc::PermMovesZero, "relation 0 must map to 0");
  std::vector<bool> seen(d + 1, false);
  for (auto v : perm) {
    if (v > d || seen[v]) throw SchemeError(SchemeErrc::InvalidPermutation, "not a permutation of 0..d");
    seen[v] = true;
  }

  std::vector<RelIndex> entries(s.relations().entries().begin(), s.relations().entries().end());
  for (auto& e : entries) e = static_cast<RelIndex>(perm[e]);

  const auto& t = s.intersection_numbers();
  std::vector<std::int64_t> p((d + 1) * (d + 1) * (d + 1));
  for (std::size_t k = 0; k <= d; ++k)
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t j = 0; j <= d; ++j)
        p[(perm[k] * (d + 1) + perm[i]) * (d + 1) + perm[j]] = t(i, j, k);

  return AssociationScheme(RelationMatrix(s.n(), d, std::move(entries)), IntersectionTensor(d, std::move(p)));
}

}  // namespace schemex
