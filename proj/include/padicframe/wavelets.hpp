#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "padicframe/function_space.hpp"
#include "padicframe/padic.hpp"

namespace padicframe {

enum class GeneratorKind { Kozyrev, KhrennikovShelkovich, Custom };

struct GeneratorSet {
  Prime p;
  GeneratorKind kind;
  int level = 0;  // m of the Khrennikov-Shelkovich family, 0 otherwise
  std::vector<LCFunction> generators;

  int order() const { return static_cast<int>(generators.size()); }
  /// "kozyrev", "ks:<m>" or "custom".
  std::string label() const;
};

/// theta_k(x) = chi_p(k x / p) 1_{Z_p}(x), k = 1..p-1.
GeneratorSet kozyrevGenerators(Prime p);

/// One generator chi_p(s x) 1_{Z_p}(x) per s in J_{p,m}, s ascending.
GeneratorSet khrennikovShelkovichGenerators(Prime p, int m);

/// Generators read from a JSON array of LCFunction values.
GeneratorSet customGenerators(Prime p, std::vector<LCFunction> generators);
GeneratorSet customGeneratorsFromJson(Prime p, const nlohmann::json& j);

/// J_{p,m}: the fractions n / p^m, 0 < n < p^m, p not dividing n, ascending.
std::vector<PAdicRational> fractionalLevel(Prime p, int m);

/// I_p^(m) = {0} plus J_{p,1} .. J_{p,m}, ascending; p^m elements.
std::vector<PAdicRational> enumerateTranslations(Prime p, int m);

struct IndexSet {
  int jMin = 0;
  int jMax = 0;
  int translationDepth = 0;
  std::vector<int> lSet;  // 1-based generator indices

  /// Every generator index 1..order.
  static IndexSet full(int order, int jMin, int jMax, int translationDepth);
};

struct FamilyEntry {
  int l;
  int j;
  PAdicRational a;
  LCFunction function;
};

struct FrameFamily {
  std::vector<FamilyEntry> entries;  // lexicographic in (l, j, a)
  GeneratorSet generators;
  IndexSet index;

  std::size_t size() const { return entries.size(); }
};

/// Materializes f^(l)_{j,a} = p^(j/2) f^(l)(p^-j x - a) over the index set.
FrameFamily buildFamily(const GeneratorSet& gen, const IndexSet& idx);

/// {p, kind, m, jRange, count, entries: [[l, j, "a"], ...]}.
nlohmann::ordered_json familyManifest(const FrameFamily& family);

}  // namespace padicframe
