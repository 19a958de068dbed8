#include "padicframe/wavelets.hpp"

#include <algorithm>
#include <stdexcept>

namespace padicframe {

std::string GeneratorSet::label() const {
  switch (kind) {
    case GeneratorKind::Kozyrev: return "kozyrev";
    case GeneratorKind::KhrennikovShelkovich: return "ks:" + std::to_string(level);
    case GeneratorKind::Custom: return "custom";
  }
  return "custom";
}

namespace {

LCFunction unitBallCharacter(const PAdicRational& s) {
  return singleAtom(1.0, s, Ball(PAdicRational(s.prime()), 0));
}

mpz_class powZ(Prime p, int k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p.value()), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

GeneratorSet kozyrevGenerators(Prime p) {
  GeneratorSet out{p, GeneratorKind::Kozyrev, 0, {}};
  for (int k = 1; k < p.value(); ++k) {
    out.generators.push_back(unitBallCharacter(PAdicRational(p, mpz_class(k), -1)));
  }
  return out;
}

GeneratorSet khrennikovShelkovichGenerators(Prime p, int m) {
  if (m < 1) throw std::invalid_argument("Khrennikov-Shelkovich level m must be >= 1");
  GeneratorSet out{p, GeneratorKind::KhrennikovShelkovich, m, {}};
  for (const auto& s : fractionalLevel(p, m)) out.generators.push_back(unitBallCharacter(s));
  return out;
}

GeneratorSet customGenerators(Prime p, std::vector<LCFunction> generators) {
  for (const auto& g : generators) {
    for (const auto& a : g.atoms()) {
      if (!(a.support.prime() == p)) throw std::invalid_argument("custom generator is not over the configured p");
    }
  }
  return GeneratorSet{p, GeneratorKind::Custom, 0, std::move(generators)};
}

GeneratorSet customGeneratorsFromJson(Prime p, const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("custom family file must hold an array of functions");
  std::vector<LCFunction> generators;
  for (const auto& item : j) generators.push_back(functionFromJson(item));
  return customGenerators(p, std::move(generators));
}

std::vector<PAdicRational> fractionalLevel(Prime p, int m) {
  if (m < 1) throw std::invalid_argument("level m must be >= 1");
  std::vector<PAdicRational> out;
  mpz_class top = powZ(p, m);
  for (mpz_class n = 1; n < top; ++n) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p.value()))) continue;
    out.emplace_back(p, n, -m);
  }
  return out;
}

std::vector<PAdicRational> enumerateTranslations(Prime p, int m) {
  if (m < 0) throw std::invalid_argument("translation depth must be >= 0");
  std::vector<PAdicRational> out;
  mpz_class top = powZ(p, m);
  for (mpz_class n = 0; n < top; ++n) out.emplace_back(p, n, -m);
  return out;
}

IndexSet IndexSet::full(int order, int jMin, int jMax, int translationDepth) {
  IndexSet idx{jMin, jMax, translationDepth, {}};
  for (int l = 1; l <= order; ++l) idx.lSet.push_back(l);
  return idx;
}

FrameFamily buildFamily(const GeneratorSet& gen, const IndexSet& idx) {
  if (idx.jMin > idx.jMax) throw std::invalid_argument("empty j range");
  std::vector<int> ls = idx.lSet;
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  for (int l : ls) {
    if (l < 1 || l > gen.order()) {
      throw std::invalid_argument("generator index " + std::to_string(l) + " outside 1.." +
                                  std::to_string(gen.order()));
    }
  }
  FrameFamily family{{}, gen, idx};
  auto translations = enumerateTranslations(gen.p, idx.translationDepth);
  for (int l : ls) {
    for (int j = idx.jMin; j <= idx.jMax; ++j) {
      for (const auto& a : translations) {
        family.entries.push_back(
            FamilyEntry{l, j, a, dilateTranslate(gen.generators[static_cast<std::size_t>(l - 1)], j, a)});
      }
    }
  }
  return family;
}

nlohmann::ordered_json familyManifest(const FrameFamily& family) {
  nlohmann::ordered_json out;
  out["p"] = family.generators.p.value();
  out["kind"] = family.generators.label();
  out["m"] = family.index.translationDepth;
  out["jRange"] = {family.index.jMin, family.index.jMax};
  out["count"] = family.size();
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : family.entries) entries.push_back({e.l, e.j, e.a.toString()});
  out["entries"] = std::move(entries);
  return out;
}

}  // namespace padicframe
