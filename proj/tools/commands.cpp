#include "commands.hpp"

#include <CLI11.hpp>

#include <ostream>

#include "esakia/document.hpp"
#include "esakia/duality.hpp"
#include "esakia/etale.hpp"
#include "esakia/limits.hpp"
#include "esakia/suites.hpp"

namespace esakia::cli {

namespace {

// Bad references on the command line are usage errors.
class UsageError : public Error {
 public:
  using Error::Error;
};

const PosetMap& require_map(const InputDocument& doc, const std::string& name) {
  const PosetMap* f = doc.find_map(name);
  if (!f) throw UsageError("no map named '" + name + "'");
  return *f;
}

std::string label_of(const PosetMap& f, Elem x, bool image) {
  return image ? f.codomain->label(f(x)) : f.domain->label(x);
}

// Checks in increasing strength; each stage stops at the first failure.
int check_order(const PosetMap& f, const std::string& name, std::ostream& out) {
  if (auto v = find_order_violation(f)) {
    const auto& d = *f.domain;
    out << "FAIL: " << name << " is not monotone: " << d.label(v->lower) << " <= " << d.label(v->upper) << " but "
        << label_of(f, v->lower, true) << " is not <= " << label_of(f, v->upper, true) << "\n";
    out << "WITNESS: order " << d.label(v->lower) << ' ' << d.label(v->upper) << "\n";
    return kCheckFailed;
  }
  return kPass;
}

int check_back(const PosetMap& f, const std::string& name, std::ostream& out) {
  if (int rc = check_order(f, name, out)) return rc;
  if (auto v = find_back_violation(f)) {
    const auto& d = *f.domain;
    const auto& c = *f.codomain;
    out << "FAIL: " << name << " is not a p-morphism: " << c.label(v->target) << " is above "
        << label_of(f, v->source, true) << " = " << name << "(" << d.label(v->source) << ") but has no preimage above "
        << d.label(v->source) << "\n";
    out << "WITNESS: back " << d.label(v->source) << ' ' << c.label(v->target) << "\n";
    return kCheckFailed;
  }
  return kPass;
}

int check_strict(const PosetMap& f, const std::string& name, std::ostream& out) {
  if (int rc = check_back(f, name, out)) return rc;
  if (auto v = find_uniqueness_violation(f)) {
    const auto& d = *f.domain;
    const std::string source = d.label(v->source);
    const std::string image = label_of(f, v->first, true);
    out << "FAIL: " << name << " is not strict: two elements above " << source << " map to " << image << "\n";
    out << "WITNESS: above " << source << ": " << d.label(v->first) << ' ' << d.label(v->second) << " -> " << image
        << "\n";
    return kCheckFailed;
  }
  return kPass;
}

int check_etale(const PosetMap& f, const std::string& name, std::ostream& out) {
  if (int rc = check_back(f, name, out)) return rc;
  const HAlgebra c(dual_of_pmorphism(f));
  if (auto a = failure_witness(c)) {
    const auto& carrier = *c.carrier();
    const Elem value = etale_axiom_value(c, *a);
    out << "FAIL: the dual of " << name << " violates E_H: at " << carrier.label(*a) << " the join of the "
        << "biconditionals is " << carrier.label(value) << ", not top\n";
    out << "WITNESS: upset " << format_subset(*f.domain, carrier.upset(*a)) << "\n";
    return kCheckFailed;
  }
  return kPass;
}

// A strict p-morphism given as a map, or the Grothendieck bundle of a presheaf.
Bundle require_bundle(const InputDocument& doc, const std::string& name) {
  if (const PresheafPtr* f = doc.find_presheaf(name)) return grothendieck(**f);
  return Bundle(require_map(doc, name));
}

// A p-morphism given as a map, or the projection of a presheaf's bundle.
PosetMap require_space_over(const InputDocument& doc, const std::string& name) {
  if (const PresheafPtr* f = doc.find_presheaf(name)) return grothendieck(**f).projection();
  return require_map(doc, name);
}

std::string base_name(const InputDocument& doc, const PosetPtr& base) {
  std::string n = doc.name_of(base);
  return n.empty() ? "base" : n;
}

// Name of the total poset: Int_F for a presheaf F, the domain for a map.
std::string total_name(const InputDocument& doc, const std::string& name) {
  if (doc.find_presheaf(name)) return "Int_" + name;
  return base_name(doc, require_map(doc, name).domain);
}

void add_file(CLI::App& cmd, std::string& file) {
  cmd.add_option("FILE", file, "Input document")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite Esakia duality, etale H-algebras and presheaves on finite posets", "esakia"};
  app.require_subcommand(1);

  std::string file;

  auto* dualize = app.add_subcommand("dualize", "Print the dual of every poset or algebra in FILE");
  bool dualize_poset = false, dualize_algebra = false;
  auto* dp = dualize->add_flag("--poset", dualize_poset, "Dualize posets into upset algebras");
  auto* da = dualize->add_flag("--algebra", dualize_algebra, "Dualize algebras into prime-filter posets");
  dp->excludes(da);
  add_file(*dualize, file);

  auto* check = app.add_subcommand("check", "Check a property of a map");
  std::string property, map_name;
  check->add_option("PROPERTY", property, "monotone, pmorphism, strict or etale")
      ->required()
      ->check(CLI::IsMember({"monotone", "pmorphism", "strict", "etale"}));
  add_file(*check, file);
  check->add_option("--map", map_name, "Map to check")->required();

  auto* groth = app.add_subcommand("grothendieck", "Print the Grothendieck bundle of a presheaf");
  std::string presheaf_name;
  add_file(*groth, file);
  groth->add_option("--presheaf", presheaf_name, "Presheaf name")->required();

  std::string left, right;
  auto* product = app.add_subcommand("product", "Fibre product of two bundles (maps or presheaves)");
  add_file(*product, file);
  product->add_option("--left", left)->required();
  product->add_option("--right", right)->required();
  auto* pushout = app.add_subcommand("pushout", "Pushout of the duals of two spaces over a common base");
  add_file(*pushout, file);
  pushout->add_option("--left", left)->required();
  pushout->add_option("--right", right)->required();

  auto* verify = app.add_subcommand("verify", "Run exhaustive theorem suites");
  std::string suite;
  SuiteOptions options;
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_choices));
  verify->add_option("--max-base", options.max_base)->capture_default_str()->check(CLI::Range(0, 6));
  verify->add_option("--max-total", options.max_total)->capture_default_str()->check(CLI::Range(0, 6));
  verify->add_option("--max-fiber", options.max_fiber)->capture_default_str()->check(CLI::Range(0, 4));
  verify->add_option("--seed", options.seed, "Seed for --sample")->capture_default_str();
  verify->add_option("--sample", options.sample, "Fraction of instances to run")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));

  auto* dot = app.add_subcommand("dot", "Emit a Graphviz Hasse diagram");
  bool dot_poset = false, dot_bundle = false;
  std::string dot_name;
  auto* op = dot->add_flag("--poset", dot_poset, "Draw posets");
  auto* ob = dot->add_flag("--bundle", dot_bundle, "Draw Grothendieck bundles of presheaves");
  op->excludes(ob);
  add_file(*dot, file);
  dot->add_option("--name", dot_name, "Draw only this declaration");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kPass : kUsageError;
  }

  try {
    if (*verify) {
      bool ok = true;
      for (const auto& report : run_suites(suite, options)) {
        print_report(out, report);
        ok = ok && report.ok();
      }
      return ok ? kPass : kCheckFailed;
    }

    const InputDocument doc = parse_file(file);

    if (*dualize) {
      if (!dualize_poset && !dualize_algebra) throw UsageError("dualize needs --poset or --algebra");
      if (dualize_poset) {
        for (const auto& [name, p] : doc.posets) write_algebra(out, "Up_" + name, upset_algebra(p));
      } else {
        for (const auto& [name, a] : doc.algebras) write_poset(out, "Spec_" + name, *dual_poset(a));
      }
      return kPass;
    }

    if (*check) {
      const PosetMap& f = require_map(doc, map_name);
      int rc = kPass;
      std::string what;
      if (property == "monotone") {
        rc = check_order(f, map_name, out);
        what = "monotone";
      } else if (property == "pmorphism") {
        rc = check_back(f, map_name, out);
        what = "a p-morphism";
      } else if (property == "strict") {
        rc = check_strict(f, map_name, out);
        what = "a strict p-morphism";
      } else {
        rc = check_etale(f, map_name, out);
        what = "a p-morphism whose dual satisfies E_H";
      }
      if (rc == kPass) out << "PASS: " << map_name << " is " << what << "\n";
      return rc;
    }

    if (*groth) {
      const PresheafPtr* f = doc.find_presheaf(presheaf_name);
      if (!f) throw UsageError("no presheaf named '" + presheaf_name + "'");
      const Bundle b = grothendieck(**f);
      write_poset(out, "Int_" + presheaf_name, *b.total());
      write_map(out, "pi_" + presheaf_name, "Int_" + presheaf_name, base_name(doc, b.base()), b.projection());
      return kPass;
    }

    if (*product) {
      const Bundle b1 = require_bundle(doc, left);
      const Bundle b2 = require_bundle(doc, right);
      const BundleProduct bp = bundle_product(b1, b2);
      const std::string total = "Prod_" + left + "_" + right;
      write_poset(out, total, *bp.bundle.total());
      write_map(out, "pi_" + total, total, base_name(doc, bp.bundle.base()), bp.bundle.projection());
      write_map(out, "p1_" + total, total, total_name(doc, left), bp.left);
      write_map(out, "p2_" + total, total, total_name(doc, right), bp.right);
      return kPass;
    }

    if (*pushout) {
      const PosetMap f1 = require_space_over(doc, left);
      const PosetMap f2 = require_space_over(doc, right);
      if (!same_poset(f1.codomain, f2.codomain)) throw BaseMismatch("the two spaces lie over different bases");
      const AlgebraPtr h = upset_algebra_ptr(f1.codomain);
      const DlPushout po = dl_pushout(dual_of_pmorphism(f1, h, upset_algebra_ptr(f1.domain)),
                                      dual_of_pmorphism(f2, h, upset_algebra_ptr(f2.domain)));
      const std::string name = "Push_" + left + "_" + right;
      write_algebra(out, name, *po.algebra);
      write_hom(out, "i1_" + name, "Up_" + total_name(doc, left), name, po.left);
      write_hom(out, "i2_" + name, "Up_" + total_name(doc, right), name, po.right);
      return kPass;
    }

    if (*dot) {
      if (!dot_poset && !dot_bundle) throw UsageError("dot needs --poset or --bundle");
      bool found = dot_name.empty();
      if (dot_poset) {
        for (const auto& [name, p] : doc.posets) {
          if (!dot_name.empty() && name != dot_name) continue;
          write_dot(out, name, *p);
          found = true;
        }
      } else {
        for (const auto& [name, f] : doc.presheaves) {
          if (!dot_name.empty() && name != dot_name) continue;
          write_bundle_dot(out, name, grothendieck(*f));
          found = true;
        }
        for (const auto& [name, f] : doc.maps) {
          if (dot_name.empty() || name != dot_name) continue;
          write_bundle_dot(out, name, Bundle(f));
          found = true;
        }
      }
      if (!found) throw UsageError("nothing named '" + dot_name + "'");
      return kPass;
    }
  } catch (const InputError& e) {
    err << "error: " << file << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace esakia::cli
