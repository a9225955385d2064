#include "esakia/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "esakia/duality.hpp"
#include "esakia/etale.hpp"
#include "esakia/limits.hpp"
#include "esakia/oracle.hpp"
#include "esakia/presheaf.hpp"

namespace esakia {

bool SuiteReport::ok() const {
  return std::all_of(theorems.begin(), theorems.end(), [](const TheoremTally& t) { return t.ok(); });
}

std::size_t SuiteReport::instances() const {
  std::size_t n = 0;
  for (const auto& t : theorems) n += t.instances;
  return n;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"strict-etale", "duality-roundtrip", "equivalence", "colimits",
                                                 "heyting-laws"};
  return names;
}

namespace {

std::string describe_poset(const FinitePoset& p) {
  std::ostringstream out;
  out << "{";
  for (Elem x = 0; x < p.size(); ++x) out << (x ? "," : "") << p.label(x);
  out << "}";
  for (auto [lo, hi] : p.covers()) out << " " << p.label(lo) << "<" << p.label(hi);
  return out.str();
}

std::string describe_map(const PosetMap& f) {
  std::ostringstream out;
  out << "X'=" << describe_poset(*f.domain) << "; X=" << describe_poset(*f.codomain) << "; f=";
  for (Elem x = 0; x < f.domain->size(); ++x) {
    out << (x ? "," : "") << f.domain->label(x) << "->" << f.codomain->label(f(x));
  }
  return out.str();
}

std::string describe_presheaf(const Presheaf& f) {
  std::ostringstream out;
  const FinitePoset& x = *f.base();
  out << "X=" << describe_poset(x) << "; sizes=";
  for (Elem e = 0; e < x.size(); ++e) out << (e ? "," : "") << f.fiber_size(e);
  for (auto [lo, hi] : x.covers()) {
    out << "; " << x.label(lo) << "->" << x.label(hi) << ":";
    for (Elem s : f.restriction(lo, hi)) out << s;
  }
  return out.str();
}

class Runner {
 public:
  Runner(std::string suite, const SuiteOptions& options) : rng_(options.seed) {
    report_.suite = std::move(suite);
    report_.options = options;
  }

  // A sampled instance is either run in full or skipped in full.
  bool take() {
    if (report_.options.sample >= 1.0) return true;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < report_.options.sample;
  }

  void record(std::string_view theorem, bool ok, const std::function<std::string()>& describe) {
    auto& t = tally(theorem);
    ++t.instances;
    if (ok) {
      ++t.passed;
    } else if (t.first_failure.empty()) {
      t.first_failure = describe();
    }
  }

  // Runs a check, recording an exception from the library as a failure.
  void check(std::string_view theorem, const std::function<bool()>& body,
             const std::function<std::string()>& describe) {
    bool ok = false;
    std::string error;
    try {
      ok = body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    record(theorem, ok, [&] { return error.empty() ? describe() : describe() + " (" + error + ")"; });
  }

  // Declares a theorem so it appears even with zero instances.
  void declare(std::string_view theorem) { tally(theorem); }

  SuiteReport finish() { return std::move(report_); }
  const SuiteOptions& options() const { return report_.options; }

 private:
  TheoremTally& tally(std::string_view theorem) {
    for (auto& t : report_.theorems) {
      if (t.name == theorem) return t;
    }
    report_.theorems.push_back(TheoremTally{std::string(theorem), 0, 0, {}});
    return report_.theorems.back();
  }

  SuiteReport report_;
  std::mt19937_64 rng_;
};

// Labeled posets and their upset algebras, by size.
class PosetCache {
 public:
  const std::vector<PosetPtr>& posets(std::size_t n) {
    auto& slot = posets_[n];
    if (slot.empty()) slot = oracle::all_labeled_posets(n);
    return slot;
  }

  const AlgebraPtr& up(const PosetPtr& p) {
    auto& slot = up_[p.get()];
    if (!slot) slot = upset_algebra_ptr(p);
    return slot;
  }

 private:
  std::map<std::size_t, std::vector<PosetPtr>> posets_;
  std::map<const FinitePoset*, AlgebraPtr> up_;
};

SuiteReport strict_etale(const SuiteOptions& options) {
  Runner run("strict-etale", options);
  PosetCache cache;
  constexpr std::string_view kIff = "strict p-morphism iff dual satisfies E_H";
  constexpr std::string_view kHom = "dual of a p-morphism is a Heyting homomorphism";
  constexpr std::string_view kWitness = "strictness witness recovers up(y) n U";
  constexpr std::string_view kCover = "principal upsets satisfy the join-cover condition";
  for (auto t : {kIff, kHom, kWitness, kCover}) run.declare(t);

  for (std::size_t nx = 0; nx <= options.max_base; ++nx) {
    for (const auto& x : cache.posets(nx)) {
      for (std::size_t nd = 0; nd <= options.max_total; ++nd) {
        for (const auto& xd : cache.posets(nd)) {
          oracle::for_each_monotone_map(xd, x, [&](const PosetMap& f) {
            if (!is_p_morphism(f) || !run.take()) return;
            auto describe = [&] { return describe_map(f); };
            const HeytingHom dual = dual_of_pmorphism(f, cache.up(x), cache.up(xd));
            run.record(kHom, is_homomorphism(dual), describe);
            const HAlgebra c(dual);
            const bool strict = is_strict_p_morphism(f);
            run.record(kIff, strict == etale_axiom_holds(c), describe);
            if (!strict) return;

            const AlgebraPtr& a = cache.up(xd);
            bool witnesses = true;
            for (Subset u : a->upsets()) {
              for (Elem y = 0; y < xd->size(); ++y) {
                const Subset w = strictness_witness(f, u, y);
                if (!is_upset(*x, w) || (xd->up(y) & u) != (xd->up(y) & inverse_image(f, w))) witnesses = false;
              }
            }
            run.record(kWitness, witnesses, describe);

            std::vector<Elem> cover;
            for (Elem y = 0; y < xd->size(); ++y) cover.push_back(*a->index_of_upset(xd->up(y)));
            bool covered = true;
            for (Elem e = 0; e < a->size(); ++e) covered = covered && join_cover_condition(c, e, cover);
            run.record(kCover, covered, describe);
          });
        }
      }
    }
  }
  return run.finish();
}

SuiteReport duality_roundtrip(const SuiteOptions& options) {
  Runner run("duality-roundtrip", options);
  PosetCache cache;
  constexpr std::string_view kUnit = "unit X -> dual(Up(X)) is an order isomorphism";
  constexpr std::string_view kCounit = "counit Up(X) -> Up(dual(Up(X))) is a Heyting isomorphism";
  constexpr std::string_view kNatural = "unit is natural in p-morphisms";
  constexpr std::string_view kFunctor = "dualizing p-morphisms is contravariantly functorial";
  for (auto t : {kUnit, kCounit, kNatural, kFunctor}) run.declare(t);

  for (std::size_t n = 0; n <= options.max_total; ++n) {
    for (const auto& x : cache.posets(n)) {
      if (!run.take()) continue;
      auto describe = [&] { return "X=" + describe_poset(*x); };
      const AlgebraPtr& up = cache.up(x);
      const Spectrum spec = spectrum(up);
      run.check(kUnit, [&] { return is_order_isomorphism(unit_iso(x, up, spec)); }, describe);
      run.check(kCounit, [&] { return is_isomorphism(counit_iso(spec, upset_algebra_ptr(spec.poset))); },
                describe);
    }
  }

  std::vector<PosetPtr> small;
  for (std::size_t n = 0; n <= options.max_base; ++n) {
    for (const auto& p : cache.posets(n)) small.push_back(p);
  }
  std::map<const FinitePoset*, Spectrum> spectra;
  std::map<const FinitePoset*, PosetMap> units;
  for (const auto& p : small) {
    spectra.emplace(p.get(), spectrum(cache.up(p)));
    units.emplace(p.get(), unit_iso(p, cache.up(p), spectra.at(p.get())));
  }
  std::map<std::pair<const FinitePoset*, const FinitePoset*>, std::vector<PosetMap>> pm;
  for (const auto& p : small) {
    for (const auto& q : small) pm[{p.get(), q.get()}] = oracle::all_p_morphisms(p, q);
  }

  for (const auto& xd : small) {
    for (const auto& x : small) {
      for (const auto& f : pm[{xd.get(), x.get()}]) {
        if (!run.take()) continue;
        run.check(
            kNatural,
            [&] {
              const HeytingHom d = dual_of_pmorphism(f, cache.up(x), cache.up(xd));
              const PosetMap dd = dual_of_homomorphism(d, spectra.at(xd.get()), spectra.at(x.get()));
              return compose(dd, units.at(xd.get())) == compose(units.at(x.get()), f);
            },
            [&] { return describe_map(f); });
      }
    }
  }

  // Composable pairs xdd -f-> xd -g-> x.
  for (const auto& xdd : small) {
    for (const auto& xd : small) {
      const auto& fs = pm[{xdd.get(), xd.get()}];
      if (fs.empty()) continue;
      for (const auto& x : small) {
        for (const auto& g : pm[{xd.get(), x.get()}]) {
          for (const auto& f : fs) {
            if (!run.take()) continue;
            run.check(
                kFunctor,
                [&] {
                  const HeytingHom lhs = dual_of_pmorphism(compose(g, f), cache.up(x), cache.up(xdd));
                  const HeytingHom rhs = compose(dual_of_pmorphism(f, cache.up(xd), cache.up(xdd)),
                                                 dual_of_pmorphism(g, cache.up(x), cache.up(xd)));
                  return same_hom(lhs, rhs);
                },
                [&] { return describe_map(f) + " | " + describe_map(g); });
          }
        }
      }
    }
  }
  return run.finish();
}

SuiteReport heyting_laws(const SuiteOptions& options) {
  Runner run("heyting-laws", options);
  PosetCache cache;
  constexpr std::string_view kAxioms = "Up(X) satisfies the Heyting axioms";
  constexpr std::string_view kAux = "y & x = y & z implies y <= (x <=> z)";
  constexpr std::string_view kLargest = "U => V is the largest upset inside (X \\ U) u V";
  constexpr std::string_view kBicond = "x <=> z is top iff x = z";
  for (auto t : {kAxioms, kAux, kLargest, kBicond}) run.declare(t);

  for (std::size_t n = 0; n <= options.max_total; ++n) {
    for (const auto& x : cache.posets(n)) {
      if (!run.take()) continue;
      auto describe = [&] { return "X=" + describe_poset(*x); };
      const AlgebraPtr& a = cache.up(x);
      run.record(kAxioms, verify_heyting(*a), describe);
      if (n + 1 > options.max_total) continue;

      const Elem m = static_cast<Elem>(a->size());
      bool aux = true, largest = true, bicond = true;
      for (Elem p = 0; p < m; ++p) {
        for (Elem q = 0; q < m; ++q) {
          const Elem b = biconditional(*a, p, q);
          if ((b == a->top()) != (p == q)) bicond = false;
          const Subset inside = upset_interior(*x, (x->carrier() - a->upset(p)) | a->upset(q));
          if (a->upset(a->implies(p, q)) != inside) largest = false;
          for (Elem y = 0; y < m && aux; ++y) {
            if (a->meet(y, p) == a->meet(y, q) && !a->leq(y, b)) aux = false;
          }
        }
      }
      run.record(kAux, aux, describe);
      run.record(kLargest, largest, describe);
      run.record(kBicond, bicond, describe);
    }
  }
  return run.finish();
}

SuiteReport equivalence(const SuiteOptions& options) {
  Runner run("equivalence", options);
  PosetCache cache;
  constexpr std::string_view kStrict = "Grothendieck projection is a strict p-morphism";
  constexpr std::string_view kTotal = "bundle -> presheaf -> bundle recovers the total";
  constexpr std::string_view kPresheaf = "presheaf -> bundle -> presheaf recovers the presheaf";
  constexpr std::string_view kSubfunctors = "subfunctors correspond to upsets of the total";
  constexpr std::string_view kAlgebra = "subfunctor algebra is isomorphic to Up of the total";
  constexpr std::string_view kComponents = "every m component is a Heyting homomorphism";
  constexpr std::string_view kEmbedding = "product embedding is an injective homomorphism";
  constexpr std::string_view kBundles = "every strict p-morphism is a Grothendieck bundle";
  constexpr std::string_view kMorphisms = "natural transformations match maps over the base";
  for (auto t : {kStrict, kTotal, kPresheaf, kSubfunctors, kAlgebra, kComponents, kEmbedding, kBundles, kMorphisms}) {
    run.declare(t);
  }

  for (std::size_t n = 0; n <= options.max_base; ++n) {
    for (const auto& x : cache.posets(n)) {
      oracle::for_each_presheaf(x, options.max_fiber, [&](const Presheaf& f) {
        if (!run.take()) return;
        auto describe = [&] { return describe_presheaf(f); };
        std::optional<Bundle> b;
        run.check(kStrict, [&] {
          b.emplace(grothendieck(f));
          return is_strict_p_morphism(b->projection());
        }, describe);
        if (!b) return;
        run.check(kTotal, [&] { return round_trip_total(*b); }, describe);
        run.check(kPresheaf, [&] { return round_trip_presheaf(f); }, describe);
        run.check(kSubfunctors, [&] {
          std::vector<Subset> images;
          for (const auto& s : subfunctor_upsets(f)) images.push_back(subfunctor_to_upset(f, s));
          std::sort(images.begin(), images.end());
          return images == all_upsets(*b->total());
        }, describe);
        const SubfunctorAlgebra hf = subfunctor_algebra(f);
        run.check(kAlgebra, [&] {
          const AlgebraPtr up = upset_algebra_ptr(b->total());
          std::vector<Elem> v;
          for (const auto& s : hf.elements) {
            const auto i = up->index_of_upset(subfunctor_to_upset(f, s));
            if (!i) return false;
            v.push_back(*i);
          }
          return is_isomorphism(HeytingHom(hf.algebra, up, std::move(v)));
        }, describe);
        run.check(kComponents, [&] {
          for (Elem e = 0; e < x->size(); ++e) {
            for (Elem xi = 0; xi < f.fiber_size(e); ++xi) {
              if (!is_homomorphism(m_component(f, hf, e, xi))) return false;
            }
          }
          return true;
        }, describe);
        run.check(kEmbedding, [&] {
          const HeytingHom h = product_embedding(f, hf);
          return is_injective(h) && is_homomorphism(h);
        }, describe);
      });
    }
  }

  for (std::size_t nx = 0; nx <= options.max_base; ++nx) {
    for (const auto& x : cache.posets(nx)) {
      for (std::size_t nd = 0; nd <= options.max_total; ++nd) {
        for (const auto& xd : cache.posets(nd)) {
          oracle::for_each_monotone_map(xd, x, [&](const PosetMap& f) {
            if (!is_strict_p_morphism(f) || !run.take()) return;
            run.check(kBundles, [&] { return round_trip_total(Bundle(f)); }, [&] { return describe_map(f); });
          });
        }
      }
    }
  }

  // Morphisms between presheaves on bases of at most two elements.
  for (std::size_t n = 0; n <= std::min<std::size_t>(options.max_base, 2); ++n) {
    for (const auto& x : cache.posets(n)) {
      std::vector<PresheafPtr> fs;
      std::vector<Bundle> bundles;
      oracle::for_each_presheaf(x, options.max_fiber, [&](const Presheaf& f) {
        fs.push_back(std::make_shared<const Presheaf>(f));
        bundles.push_back(grothendieck(f));
      });
      for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = 0; j < fs.size(); ++j) {
          for (const auto& m : oracle::all_presheaf_morphisms(fs[i], fs[j])) {
            if (!run.take()) continue;
            run.check(kMorphisms, [&] {
              const PosetMap g = grothendieck_map(m, bundles[i], bundles[j]);
              if (!is_monotone(g) || compose(bundles[j].projection(), g) != bundles[i].projection()) return false;
              return fiber_morphism(g, bundles[i], bundles[j]).components == m.components;
            }, [&] { return describe_presheaf(*fs[i]) + " => " + describe_presheaf(*fs[j]); });
          }
        }
      }
    }
  }
  return run.finish();
}

SuiteReport colimits(const SuiteOptions& options) {
  Runner run("colimits", options);
  PosetCache cache;
  constexpr std::string_view kProduct = "bundle product matches the pointwise presheaf product";
  constexpr std::string_view kComparison = "etale coproduct is isomorphic to the pushout, legs commuting";
  constexpr std::string_view kLegs = "coprojections are maps of H-algebras";
  constexpr std::string_view kEtale = "etale coproduct is etale";
  constexpr std::string_view kSquare = "pushout square commutes";
  for (auto t : {kProduct, kComparison, kLegs, kEtale, kSquare}) run.declare(t);

  for (std::size_t n = 0; n <= options.max_base; ++n) {
    for (const auto& x : cache.posets(n)) {
      const AlgebraPtr& h = cache.up(x);
      std::vector<Presheaf> fs;
      std::vector<Bundle> bundles;
      std::vector<HAlgebra> algebras;
      oracle::for_each_presheaf(x, options.max_fiber, [&](const Presheaf& f) {
        fs.push_back(f);
        bundles.push_back(grothendieck(f));
        algebras.emplace_back(dual_of_pmorphism(bundles.back().projection(), h, upset_algebra_ptr(bundles.back().total())));
      });
      for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = 0; j < fs.size(); ++j) {
          if (!run.take()) continue;
          auto describe = [&] { return describe_presheaf(fs[i]) + " | " + describe_presheaf(fs[j]); };

          run.check(kProduct, [&] {
            const BundleProduct bp = bundle_product(bundles[i], bundles[j]);
            const Presheaf pw = presheaf_product(fs[i], fs[j]);
            const Bundle g = grothendieck(pw);
            const FinitePoset& t = *bp.bundle.total();
            if (t.size() != g.total()->size()) return false;
            std::vector<Elem> v(t.size());
            for (Elem e = 0; e < t.size(); ++e) {
              const Elem p = bp.left(e), q = bp.right(e);
              const Elem over = bundles[i].projection()(p);
              const std::size_t s = p - fs[i].offset(over);
              const std::size_t u = q - fs[j].offset(over);
              v[e] = static_cast<Elem>(pw.offset(over) + s * fs[j].fiber_size(over) + u);
            }
            const PosetMap iso(bp.bundle.total(), g.total(), std::move(v));
            return is_order_isomorphism(iso) && compose(g.projection(), iso) == bp.bundle.projection();
          }, describe);

          std::optional<DlPushout> po;
          run.check(kSquare, [&] {
            po.emplace(dl_pushout(algebras[i].structure(), algebras[j].structure()));
            return same_hom(compose(po->left, algebras[i].structure()), compose(po->right, algebras[j].structure()));
          }, describe);

          std::optional<EtaleCoproduct> co;
          run.check(kEtale, [&] {
            co.emplace(etale_coproduct(algebras[i], algebras[j]));
            return is_etale(co->algebra);
          }, describe);
          if (!co) continue;
          run.check(kLegs, [&] {
            return same_hom(compose(co->left, algebras[i].structure()), co->algebra.structure()) &&
                   same_hom(compose(co->right, algebras[j].structure()), co->algebra.structure()) &&
                   is_homomorphism(co->left) && is_homomorphism(co->right);
          }, describe);
          if (!po) continue;
          run.check(kComparison, [&] { return coproduct_comparison(*po, *co).has_value(); }, describe);
        }
      }
    }
  }
  return run.finish();
}

}  // namespace

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "strict-etale") return strict_etale(options);
  if (name == "duality-roundtrip") return duality_roundtrip(options);
  if (name == "equivalence") return equivalence(options);
  if (name == "colimits") return colimits(options);
  if (name == "heyting-laws") return heyting_laws(options);
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

std::vector<SuiteReport> run_suites(std::string_view name, const SuiteOptions& options) {
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n, options));
  } else {
    out.push_back(run_suite(name, options));
  }
  return out;
}

void print_report(std::ostream& out, const SuiteReport& report) {
  const auto& o = report.options;
  out << "suite " << report.suite << " (max-base " << o.max_base << ", max-total " << o.max_total << ", max-fiber "
      << o.max_fiber;
  if (o.sample < 1.0) {
    out << ", sample " << o.sample << ", seed " << o.seed;
  } else {
    out << ", exhaustive";
  }
  out << ")\n";
  for (const auto& t : report.theorems) {
    out << "  " << (t.ok() ? "PASS" : "FAIL") << "  " << t.passed << "/" << t.instances << "  " << t.name << "\n";
    if (!t.ok()) out << "        first failure: " << t.first_failure << "\n";
  }
  out << "result " << report.suite << ": " << (report.ok() ? "PASS" : "FAIL") << " (" << report.instances()
      << " checks)\n";
}

}  // namespace esakia
