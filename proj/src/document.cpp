#include "esakia/document.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace esakia {

namespace {

struct Statement {
  std::size_t line;
  std::vector<std::string> words;
};

struct Block {
  std::string kind;
  std::size_t line;
  std::vector<std::string> header;
  std::vector<Statement> body;
};

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

const std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>> kHeaderArity = {
    {"poset", {2, 2}}, {"algebra", {2, 2}}, {"map", {4, 4}}, {"presheaf", {3, 3}}};

// Body keyword -> (owning block kind, min words, max words; 0 = unbounded).
struct BodyRule {
  std::string_view block;
  std::size_t min, max;
};
const std::map<std::string, std::vector<BodyRule>, std::less<>> kBodyRules = {
    {"elem", {{"poset", 2, 0}, {"algebra", 2, 0}}},
    {"cover", {{"poset", 3, 3}, {"algebra", 3, 3}}},
    {"send", {{"map", 3, 3}}},
    {"fiber", {{"presheaf", 2, 0}}},
    {"restrict", {{"presheaf", 5, 5}}},
};

std::vector<Block> split_blocks(std::string_view text) {
  std::vector<Block> blocks;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto words = tokenize(raw);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string& key = words.front();
    if (auto h = kHeaderArity.find(key); h != kHeaderArity.end()) {
      if (words.size() < h->second.first || words.size() > h->second.second) {
        throw SyntaxError(line, "'" + key + "' expects " + std::to_string(h->second.first - 1) + " argument(s)");
      }
      blocks.push_back(Block{key, line, std::move(words), {}});
    } else if (auto b = kBodyRules.find(key); b != kBodyRules.end()) {
      if (blocks.empty()) throw SyntaxError(line, "'" + key + "' outside of any block");
      const BodyRule* rule = nullptr;
      for (const auto& r : b->second) {
        if (r.block == blocks.back().kind) rule = &r;
      }
      if (!rule) throw SyntaxError(line, "'" + key + "' is not allowed in a " + blocks.back().kind + " block");
      if (words.size() < rule->min || (rule->max && words.size() > rule->max)) {
        throw SyntaxError(line, "wrong number of arguments to '" + key + "'");
      }
      blocks.back().body.push_back(Statement{line, std::move(words)});
    } else {
      throw SyntaxError(line, "unknown keyword '" + key + "'");
    }
    if (end == text.size()) break;
  }
  return blocks;
}

// Elements and covers shared by poset and algebra blocks.
FinitePoset build_order(const Block& block) {
  std::vector<std::string> labels;
  std::set<std::string, std::less<>> seen;
  for (const auto& st : block.body) {
    if (st.words[0] != "elem") continue;
    for (std::size_t i = 1; i < st.words.size(); ++i) {
      if (!seen.insert(st.words[i]).second) throw SyntaxError(st.line, "duplicate element '" + st.words[i] + "'");
      labels.push_back(st.words[i]);
    }
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& st : block.body) {
    if (st.words[0] != "cover") continue;
    for (std::size_t i = 1; i < 3; ++i) {
      if (!seen.count(st.words[i])) throw UnresolvedReference(st.line, st.words[i]);
    }
    covers.emplace_back(st.words[1], st.words[2]);
  }
  try {
    return FinitePoset::from_covers(std::move(labels), covers);
  } catch (const Error& e) {
    throw InvalidDeclaration(block.line, block.header[0] + " " + block.header[1] + ": " + e.what());
  }
}

template <class T>
const T* lookup(const std::vector<std::pair<std::string, T>>& v, std::string_view name) {
  for (const auto& [n, x] : v) {
    if (n == name) return &x;
  }
  return nullptr;
}

}  // namespace

const PosetPtr* InputDocument::find_poset(std::string_view name) const { return lookup(posets, name); }
const AlgebraPtr* InputDocument::find_algebra(std::string_view name) const { return lookup(algebras, name); }
const PosetMap* InputDocument::find_map(std::string_view name) const { return lookup(maps, name); }
const PresheafPtr* InputDocument::find_presheaf(std::string_view name) const { return lookup(presheaves, name); }

std::string InputDocument::name_of(const PosetPtr& p) const {
  for (const auto& [n, q] : posets) {
    if (q == p) return n;
  }
  return {};
}

InputDocument parse_document(std::string_view text) {
  const auto blocks = split_blocks(text);
  InputDocument doc;

  std::set<std::string, std::less<>> names;
  for (const auto& b : blocks) {
    if (!names.insert(b.header[1]).second) throw SyntaxError(b.line, "duplicate declaration '" + b.header[1] + "'");
  }

  for (const auto& b : blocks) {
    if (b.kind == "poset") {
      doc.posets.emplace_back(b.header[1], share(build_order(b)));
    } else if (b.kind == "algebra") {
      const FinitePoset order = build_order(b);
      try {
        doc.algebras.emplace_back(b.header[1], share(FiniteHeytingAlgebra::from_lattice_order(order)));
      } catch (const Error& e) {
        throw InvalidDeclaration(b.line, "algebra " + b.header[1] + ": " + e.what());
      }
    }
  }

  for (const auto& b : blocks) {
    if (b.kind == "map") {
      const PosetPtr* dom = doc.find_poset(b.header[2]);
      if (!dom) throw UnresolvedReference(b.line, b.header[2]);
      const PosetPtr* cod = doc.find_poset(b.header[3]);
      if (!cod) throw UnresolvedReference(b.line, b.header[3]);
      std::vector<std::optional<Elem>> image((*dom)->size());
      for (const auto& st : b.body) {
        const auto x = (*dom)->find(st.words[1]);
        if (!x) throw UnresolvedReference(st.line, st.words[1]);
        const auto y = (*cod)->find(st.words[2]);
        if (!y) throw UnresolvedReference(st.line, st.words[2]);
        if (image[*x]) throw SyntaxError(st.line, "element '" + st.words[1] + "' is sent twice");
        image[*x] = *y;
      }
      std::vector<Elem> assignment;
      for (Elem x = 0; x < image.size(); ++x) {
        if (!image[x]) {
          throw SyntaxError(b.line, "map " + b.header[1] + " is not total: no image for '" + (*dom)->label(x) + "'");
        }
        assignment.push_back(*image[x]);
      }
      doc.maps.emplace_back(b.header[1], PosetMap(*dom, *cod, std::move(assignment)));
    } else if (b.kind == "presheaf") {
      const PosetPtr* base = doc.find_poset(b.header[2]);
      if (!base) throw UnresolvedReference(b.line, b.header[2]);
      const FinitePoset& x = **base;
      std::vector<std::vector<std::string>> fibers(x.size());
      std::vector<bool> declared(x.size(), false);
      for (const auto& st : b.body) {
        if (st.words[0] != "fiber") continue;
        const auto e = x.find(st.words[1]);
        if (!e) throw UnresolvedReference(st.line, st.words[1]);
        if (declared[*e]) throw SyntaxError(st.line, "fiber over '" + st.words[1] + "' declared twice");
        declared[*e] = true;
        std::set<std::string, std::less<>> seen;
        for (std::size_t i = 2; i < st.words.size(); ++i) {
          if (!seen.insert(st.words[i]).second) throw SyntaxError(st.line, "duplicate fiber element '" + st.words[i] + "'");
          fibers[*e].push_back(st.words[i]);
        }
      }
      auto fiber_index = [&](Elem e, const std::string& id) -> std::optional<Elem> {
        for (Elem i = 0; i < fibers[e].size(); ++i) {
          if (fibers[e][i] == id) return i;
        }
        return std::nullopt;
      };
      // (from, to) -> (partial map, line of first statement)
      std::map<std::pair<Elem, Elem>, std::pair<std::vector<std::optional<Elem>>, std::size_t>> partial;
      for (const auto& st : b.body) {
        if (st.words[0] != "restrict") continue;
        const auto e1 = x.find(st.words[1]);
        if (!e1) throw UnresolvedReference(st.line, st.words[1]);
        const auto e2 = x.find(st.words[2]);
        if (!e2) throw UnresolvedReference(st.line, st.words[2]);
        if (!x.leq(*e1, *e2)) {
          throw InvalidDeclaration(st.line, "restriction from '" + st.words[1] + "' to '" + st.words[2] +
                                                "' does not follow the order");
        }
        const auto f1 = fiber_index(*e1, st.words[3]);
        if (!f1) throw UnresolvedReference(st.line, st.words[3]);
        const auto f2 = fiber_index(*e2, st.words[4]);
        if (!f2) throw UnresolvedReference(st.line, st.words[4]);
        auto [it, fresh] = partial.try_emplace({*e1, *e2});
        if (fresh) it->second = {std::vector<std::optional<Elem>>(fibers[*e1].size()), st.line};
        auto& slot = it->second.first[*f1];
        if (slot && *slot != *f2) throw SyntaxError(st.line, "conflicting restriction of '" + st.words[3] + "'");
        slot = *f2;
      }
      std::vector<Presheaf::Restriction> restrictions;
      for (const auto& [key, entry] : partial) {
        Presheaf::Restriction r{key.first, key.second, {}};
        for (Elem i = 0; i < entry.first.size(); ++i) {
          if (!entry.first[i]) {
            throw SyntaxError(entry.second, "restriction " + x.label(key.first) + " -> " + x.label(key.second) +
                                                " has no image for '" + fibers[key.first][i] + "'");
          }
          r.map.push_back(*entry.first[i]);
        }
        restrictions.push_back(std::move(r));
      }
      try {
        doc.presheaves.emplace_back(b.header[1],
                                    std::make_shared<const Presheaf>(Presheaf::make(*base, fibers, restrictions)));
      } catch (const Error& e) {
        throw InvalidDeclaration(b.line, "presheaf " + b.header[1] + ": " + e.what());
      }
    }
  }
  return doc;
}

InputDocument parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(0, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void write_poset(std::ostream& out, std::string_view name, const FinitePoset& p) {
  out << "poset " << name << "\n";
  if (!p.empty()) {
    out << "elem";
    for (const auto& l : p.labels()) out << ' ' << l;
    out << "\n";
  }
  for (auto [lo, hi] : p.covers()) out << "cover " << p.label(lo) << ' ' << p.label(hi) << "\n";
}

void write_algebra(std::ostream& out, std::string_view name, const FiniteHeytingAlgebra& a) {
  out << "algebra " << name << "\n";
  out << "elem";
  for (const auto& l : a.labels()) out << ' ' << l;
  out << "\n";
  for (Elem x = 0; x < a.size(); ++x) {
    for (Elem y = 0; y < a.size(); ++y) {
      if (x == y || !a.leq(x, y)) continue;
      bool cover = true;
      for (Elem z = 0; z < a.size() && cover; ++z) {
        if (z != x && z != y && a.leq(x, z) && a.leq(z, y)) cover = false;
      }
      if (cover) out << "cover " << a.label(x) << ' ' << a.label(y) << "\n";
    }
  }
}

void write_map(std::ostream& out, std::string_view name, std::string_view domain, std::string_view codomain,
               const PosetMap& f) {
  out << "map " << name << ' ' << domain << ' ' << codomain << "\n";
  for (Elem x = 0; x < f.domain->size(); ++x) {
    out << "send " << f.domain->label(x) << ' ' << f.codomain->label(f(x)) << "\n";
  }
}

void write_hom(std::ostream& out, std::string_view name, std::string_view domain, std::string_view codomain,
               const HeytingHom& h) {
  out << "hom " << name << ' ' << domain << ' ' << codomain << "\n";
  for (Elem x = 0; x < h.domain->size(); ++x) {
    out << "send " << h.domain->label(x) << ' ' << h.codomain->label(h(x)) << "\n";
  }
}

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_dot(std::ostream& out, std::string_view name, const FinitePoset& p) {
  out << "digraph " << dot_quote(name) << " {\n";
  out << "  rankdir=BT;\n";
  for (Elem x = 0; x < p.size(); ++x) out << "  n" << x << " [label=" << dot_quote(p.label(x)) << "];\n";
  for (auto [lo, hi] : p.covers()) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
}

void write_bundle_dot(std::ostream& out, std::string_view name, const Bundle& b) {
  const FinitePoset& total = *b.total();
  const FinitePoset& base = *b.base();
  out << "digraph " << dot_quote(name) << " {\n";
  out << "  rankdir=BT;\n";
  for (Elem x = 0; x < base.size(); ++x) {
    out << "  subgraph cluster_" << x << " {\n";
    out << "    label=" << dot_quote(base.label(x)) << ";\n";
    for (Elem e : b.fiber(x)) out << "    n" << e << " [label=" << dot_quote(total.label(e)) << "];\n";
    out << "  }\n";
  }
  for (auto [lo, hi] : total.covers()) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
}

}  // namespace esakia
