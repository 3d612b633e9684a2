#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "schemex/scheme.hpp"

namespace schemex {

class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family { Hamming, Johnson, Cycle, Complete, DisjointCliques, Cyclotomic13, Petersen, HypercubeReordered };

const char* to_string(Family f);
/// Throws FamilyError for an unknown tag.
Family family_from_string(const std::string& tag);

struct FamilySpec {
  Family family;
  std::vector<std::size_t> params;
};

/// Generated schemes have at most this many points.
inline constexpr std::size_t kMaxFamilyPoints = 5000;

/// Points are listed canonically (lexicographic words, sorted subsets), so
/// the relation matrix is reproducible byte for byte. Throws FamilyError
/// (ParamOutOfRange) on bad parameters.
///
///   hamming n q                 words of length n over q symbols, Hamming distance
///   johnson v k                 k-subsets of v, relation k - |intersection|
///   cycle n                     path distance on C_n
///   complete n                  K_n, d = 1
///   disjoint_cliques c m        c cliques of size m: same point / same clique / other
///   cyclotomic13                GF(13) modulo cubes, classes {±1,±5} {±2,±3} {±4,±6}
///   petersen                    johnson 5 2 with A_1 the disjointness relation
///   hypercube_reordered a b c   hamming 3 2 with relation i relabeled to (a,b,c)[i-1]
AssociationScheme generate(const FamilySpec& spec);

enum class Expected { Yes, No, PreconditionFailed };

struct CorpusEntry {
  std::string name;
  FamilySpec spec;
  Expected expected;
};

/// The fixed acceptance corpus.
std::vector<CorpusEntry> corpus();

}  // namespace schemex
