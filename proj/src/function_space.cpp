#include "padicframe/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "padicframe/errors.hpp"

namespace padicframe {

namespace {

double powP(Prime p, double k) { return std::pow(static_cast<double>(p.value()), k); }

Prime commonPrime(const std::vector<CharAtom>& atoms) {
  Prime p = atoms.front().support.prime();
  for (const auto& a : atoms) {
    if (!(a.support.prime() == p) || !(a.frequency.prime() == p)) {
      throw std::invalid_argument("atoms over different primes");
    }
  }
  return p;
}

// Groups atoms under the maximal balls among their supports. Returns the roots
// in ascending order together with, for each root, the atoms living on it.
struct Group {
  Ball root;
  std::vector<CharAtom> whole;  // support == root
  std::vector<CharAtom> inner;  // support strictly inside root
};

std::vector<Group> groupByMaximalBalls(std::vector<CharAtom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(), [](const CharAtom& a, const CharAtom& b) {
    return a.support.radiusLog() > b.support.radiusLog();
  });
  std::vector<Group> groups;
  for (auto& atom : atoms) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return ballRelation(atom.support, g.root) != BallRelation::Disjoint;
    });
    if (it == groups.end()) {
      groups.push_back(Group{atom.support, {}, {}});
      it = std::prev(groups.end());
    }
    if (atom.support == it->root) {
      it->whole.push_back(std::move(atom));
    } else {
      it->inner.push_back(std::move(atom));
    }
  }
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) { return a.root < b.root; });
  return groups;
}

class Refiner {
 public:
  std::vector<CharAtom> out;

  void process(std::vector<CharAtom> atoms) {
    for (auto& g : groupByMaximalBalls(std::move(atoms))) {
      resolve(g.root, std::move(g.whole), std::move(g.inner));
    }
  }

 private:
  std::size_t work_ = 0;

  void charge(std::size_t n) {
    work_ += n;
    if (work_ + out.size() > kRefinementBudget) {
      throw RefinementBudgetExceeded("canonicalization needs more than " +
                                     std::to_string(kRefinementBudget) + " atoms");
    }
  }

  static std::vector<CharAtom> merge(const Ball& ball, const std::vector<CharAtom>& whole) {
    std::vector<CharAtom> merged;
    for (const auto& a : whole) {
      CharAtom atom = makeAtom(a.amplitude, a.frequency, ball);
      auto it = std::find_if(merged.begin(), merged.end(),
                             [&](const CharAtom& m) { return m.frequency == atom.frequency; });
      if (it == merged.end()) {
        merged.push_back(std::move(atom));
      } else {
        it->amplitude += atom.amplitude;
      }
    }
    std::erase_if(merged, [](const CharAtom& a) { return std::abs(a.amplitude) < kAmplitudeDropThreshold; });
    return merged;
  }

  void resolve(const Ball& ball, std::vector<CharAtom> whole, std::vector<CharAtom> inner) {
    std::vector<CharAtom> merged = merge(ball, whole);
    if (inner.empty() && merged.size() <= 1) {
      for (auto& a : merged) out.push_back(std::move(a));
      charge(0);
      return;
    }
    if (merged.empty()) {
      process(std::move(inner));
      return;
    }
    std::vector<Ball> children = ball.split();
    charge(children.size());
    for (const auto& child : children) {
      std::vector<CharAtom> childWhole, childInner;
      for (const auto& a : merged) childWhole.push_back(makeAtom(a.amplitude, a.frequency, child));
      for (const auto& a : inner) {
        switch (ballRelation(a.support, child)) {
          case BallRelation::Equal: childWhole.push_back(a); break;
          case BallRelation::FirstInsideSecond: childInner.push_back(a); break;
          default: break;
        }
      }
      resolve(child, std::move(childWhole), std::move(childInner));
    }
  }
};

std::complex<double> evaluateAtoms(const std::vector<CharAtom>& atoms, const PAdicRational& x) {
  std::complex<double> sum = 0.0;
  for (const auto& a : atoms) {
    if (a.support.contains(x)) sum += a.amplitude * characterPhase(a.frequency * x).toComplex();
  }
  return sum;
}

long atomConstancyDepth(const CharAtom& a) {
  long scale = a.support.radiusLog();
  if (auto v = a.frequency.valuation()) scale = std::min(scale, *v);
  return -scale;
}

std::complex<double> integrateCells(const Ball& ball, const std::vector<CharAtom>& f,
                                    const std::vector<CharAtom>& g, long depth) {
  if (f.empty() || g.empty()) return 0.0;
  if (ball.radiusLog() <= -depth) {
    const PAdicRational& x = ball.center();
    return evaluateAtoms(f, x) * std::conj(evaluateAtoms(g, x)) * powP(ball.prime(), -depth);
  }
  std::complex<double> sum = 0.0;
  for (const auto& child : ball.split()) {
    std::vector<CharAtom> fc, gc;
    for (const auto& a : f) {
      if (ballRelation(a.support, child) != BallRelation::Disjoint) fc.push_back(a);
    }
    for (const auto& a : g) {
      if (ballRelation(a.support, child) != BallRelation::Disjoint) gc.push_back(a);
    }
    sum += integrateCells(child, fc, gc, depth);
  }
  return sum;
}

}  // namespace

CharAtom makeAtom(std::complex<double> amplitude, const PAdicRational& frequency, const Ball& support) {
  long gamma = support.radiusLog();
  PAdicRational reduced = fractionalPart(frequency.scaledByPowerOfP(-gamma)).scaledByPowerOfP(gamma);
  PAdicRational dropped = frequency - reduced;
  if (!dropped.isZero()) amplitude *= characterPhase(dropped * support.center()).toComplex();
  return CharAtom{amplitude, std::move(reduced), support};
}

LCFunction canonicalize(std::vector<CharAtom> atoms) {
  LCFunction f;
  if (atoms.empty()) return f;
  commonPrime(atoms);
  Refiner refiner;
  refiner.process(std::move(atoms));
  f.atoms_ = std::move(refiner.out);
  std::sort(f.atoms_.begin(), f.atoms_.end(),
            [](const CharAtom& a, const CharAtom& b) { return a.support < b.support; });
  return f;
}

LCFunction singleAtom(std::complex<double> amplitude, const PAdicRational& frequency, const Ball& support) {
  return canonicalize({CharAtom{amplitude, frequency, support}});
}

LCFunction operator+(const LCFunction& f, const LCFunction& g) {
  std::vector<CharAtom> atoms = f.atoms();
  atoms.insert(atoms.end(), g.atoms().begin(), g.atoms().end());
  return canonicalize(std::move(atoms));
}

LCFunction operator*(std::complex<double> c, const LCFunction& f) {
  std::vector<CharAtom> atoms = f.atoms();
  for (auto& a : atoms) a.amplitude *= c;
  return canonicalize(std::move(atoms));
}

std::complex<double> evaluate(const LCFunction& f, const PAdicRational& x) {
  return evaluateAtoms(f.atoms(), x);
}

namespace {

// Total order on atoms, used to orient each pair so that <g, f> is computed
// from exactly the same floating-point operations as <f, g>.
bool atomBefore(const CharAtom& a, const CharAtom& b) {
  if (a.support < b.support) return true;
  if (b.support < a.support) return false;
  if (int c = compareReal(a.frequency, b.frequency); c != 0) return c < 0;
  if (a.amplitude.real() != b.amplitude.real()) return a.amplitude.real() < b.amplitude.real();
  return a.amplitude.imag() < b.amplitude.imag();
}

struct PairTerm {
  const CharAtom* first;
  const CharAtom* second;
  bool conjugated;
};

}  // namespace

std::complex<double> innerProduct(const LCFunction& f, const LCFunction& g) {
  std::vector<PairTerm> terms;
  for (const auto& a : f.atoms()) {
    for (const auto& b : g.atoms()) {
      if (ballRelation(a.support, b.support) == BallRelation::Disjoint) continue;
      const Ball& inner = a.support.radiusLog() <= b.support.radiusLog() ? a.support : b.support;
      // The character integrates to zero over the ball unless |delta| <= p^-gamma.
      if (auto v = (a.frequency - b.frequency).valuation(); v && *v < inner.radiusLog()) continue;
      if (atomBefore(b, a)) {
        terms.push_back({&b, &a, true});
      } else {
        terms.push_back({&a, &b, false});
      }
    }
  }
  std::sort(terms.begin(), terms.end(), [](const PairTerm& x, const PairTerm& y) {
    if (atomBefore(*x.first, *y.first)) return true;
    if (atomBefore(*y.first, *x.first)) return false;
    return atomBefore(*x.second, *y.second);
  });
  std::complex<double> sum = 0.0;
  for (const auto& t : terms) {
    const CharAtom& a = *t.first;
    const CharAtom& b = *t.second;
    const Ball& inner = a.support.radiusLog() <= b.support.radiusLog() ? a.support : b.support;
    std::complex<double> value = a.amplitude * std::conj(b.amplitude) *
                                 characterPhase((a.frequency - b.frequency) * inner.center()).toComplex() *
                                 powP(inner.prime(), static_cast<double>(inner.radiusLog()));
    sum += t.conjugated ? std::conj(value) : value;
  }
  return sum;
}

double l2Norm(const LCFunction& f) { return std::sqrt(std::max(0.0, innerProduct(f, f).real())); }

long requiredQuadratureDepth(const LCFunction& f) {
  long depth = std::numeric_limits<long>::min();
  for (const auto& a : f.atoms()) depth = std::max(depth, atomConstancyDepth(a));
  return depth;
}

std::complex<double> quadratureInnerProduct(const LCFunction& f, const LCFunction& g, long depth) {
  if (f.isZero() || g.isZero()) return 0.0;
  long needed = std::max(requiredQuadratureDepth(f), requiredQuadratureDepth(g));
  if (depth < needed) {
    throw DepthTooCoarse("quadrature depth " + std::to_string(depth) + " is coarser than the required " +
                         std::to_string(needed));
  }
  std::vector<CharAtom> all = f.atoms();
  all.insert(all.end(), g.atoms().begin(), g.atoms().end());
  std::complex<double> sum = 0.0;
  for (const auto& group : groupByMaximalBalls(std::move(all))) {
    std::vector<CharAtom> fr, gr;
    for (const auto& a : f.atoms()) {
      if (ballRelation(a.support, group.root) != BallRelation::Disjoint) fr.push_back(a);
    }
    for (const auto& a : g.atoms()) {
      if (ballRelation(a.support, group.root) != BallRelation::Disjoint) gr.push_back(a);
    }
    sum += integrateCells(group.root, fr, gr, depth);
  }
  return sum;
}

LCFunction dilateTranslate(const LCFunction& f, long j, const PAdicRational& a) {
  std::vector<CharAtom> atoms;
  atoms.reserve(f.atoms().size());
  for (const auto& atom : f.atoms()) {
    Prime p = atom.support.prime();
    PAdicRational scale(p, mpz_class(1), j);
    std::complex<double> amplitude =
        atom.amplitude * powP(p, 0.5 * static_cast<double>(j)) * characterPhase(-(atom.frequency * a)).toComplex();
    PAdicRational frequency = atom.frequency.scaledByPowerOfP(-j);
    Ball support(scale * (atom.support.center() + a), atom.support.radiusLog() - j);
    atoms.push_back(CharAtom{amplitude, std::move(frequency), std::move(support)});
  }
  return canonicalize(std::move(atoms));
}

nlohmann::json toJson(const LCFunction& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : f.atoms()) {
    out.push_back({{"amplitude", {a.amplitude.real(), a.amplitude.imag()}},
                   {"frequency", a.frequency.toString()},
                   {"ball", {{"center", a.support.center().toString()}, {"radiusLog", a.support.radiusLog()}}}});
  }
  return out;
}

LCFunction functionFromJson(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("LCFunction JSON must be an array of atoms");
  std::vector<CharAtom> atoms;
  for (const auto& item : j) {
    const auto& amp = item.at("amplitude");
    if (!amp.is_array() || amp.size() != 2) throw std::invalid_argument("amplitude must be [re, im]");
    PAdicRational frequency = PAdicRational::parse(item.at("frequency").get<std::string>());
    const auto& ball = item.at("ball");
    PAdicRational center = PAdicRational::parse(ball.at("center").get<std::string>(), frequency.prime());
    atoms.push_back(CharAtom{{amp[0].get<double>(), amp[1].get<double>()},
                             frequency,
                             Ball(center, ball.at("radiusLog").get<long>())});
  }
  return canonicalize(std::move(atoms));
}

}  // namespace padicframe
