#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "esakia/document.hpp"
#include "fixtures.hpp"

using namespace esakia;

namespace {

const char* kConstant = R"(# constant map from the two-chain to a point
poset C2
elem a b
cover a b

poset Pt
elem pt

map f C2 Pt
send a pt
send b pt

map id C2 C2
send a a
send b b

map swap C2 C2
send a b
send b a

map down C2 C2
send a a
send b a

presheaf L C2
fiber a x1 x2
fiber b y
restrict a b x1 y
restrict a b x2 y
)";

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& text, const std::string& name) {
    path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

template <class E>
std::size_t error_line(const std::string& text) {
  try {
    parse_document(text);
  } catch (const E& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse a poset block") {
  const auto doc = parse_document("poset X\nelem a b\ncover a b");
  REQUIRE(doc.posets.size() == 1);
  CHECK(*doc.posets[0].second == chain_poset(2));
  CHECK(doc.find_poset("X") != nullptr);
  CHECK(doc.find_poset("Y") == nullptr);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line<UnresolvedReference>("poset X\nelem a\nmap f X X\nsend a z\n") == 4);
  CHECK(error_line<SyntaxError>("poset X\nelem a b\nmap f X X\nsend a a\n") == 3);
  CHECK(error_line<SyntaxError>("poset X\nelem a\nfrobnicate\n") == 3);
  CHECK(error_line<SyntaxError>("elem a\n") == 1);
  CHECK(error_line<SyntaxError>("poset X\nsend a b\n") == 2);
  CHECK(error_line<SyntaxError>("poset X\nelem a a\n") == 2);
  CHECK(error_line<SyntaxError>("poset X\nposet X\n") == 2);
  CHECK(error_line<SyntaxError>("poset X\nelem a b\ncover a\n") == 3);
  CHECK(error_line<UnresolvedReference>("poset X\nelem a\ncover a q\n") == 3);
  CHECK(error_line<UnresolvedReference>("map f X X\n") == 1);
  CHECK(error_line<InvalidDeclaration>("# cycle\nposet X\nelem a b\ncover a b\ncover b a\n") == 2);
  CHECK(error_line<InvalidDeclaration>("algebra A\nelem 0 x y\ncover 0 x\ncover 0 y\n") == 1);
  CHECK(error_line<UnresolvedReference>("poset X\nelem a b\ncover a b\npresheaf F X\nfiber a p\nfiber b q\n"
                                        "restrict a b p r\n") == 7);
  CHECK(error_line<InvalidDeclaration>("poset X\nelem a b\ncover a b\npresheaf F X\nfiber a p\nfiber b q\n") == 4);
  CHECK(error_line<SyntaxError>("poset X\nelem a b\ncover a b\npresheaf F X\nfiber a p p2\nfiber b q\n"
                                "restrict a b p q\n") == 7);
}

TEST_CASE("parse presheaves and algebras") {
  const auto doc = parse_document(kConstant);
  CHECK(doc.maps.size() == 4);
  const PresheafPtr* l = doc.find_presheaf("L");
  REQUIRE(l);
  CHECK(round_trip_presheaf(**l));
  CHECK(find_presheaf_isomorphism(**l, fixtures::lambda_presheaf()).has_value());

  const auto alg = parse_document("algebra B\nelem 0 x y 1\ncover 0 x\ncover 0 y\ncover x 1\ncover y 1\n");
  REQUIRE(alg.algebras.size() == 1);
  CHECK(alg.algebras[0].second->size() == 4);
  CHECK(verify_heyting(*alg.algebras[0].second));
}

TEST_CASE("written documents parse back") {
  const auto v = fixtures::vee();
  std::ostringstream out;
  write_poset(out, "V", *v);
  write_algebra(out, "U", upset_algebra(v));
  const auto doc = parse_document(out.str());
  CHECK(*doc.posets[0].second == *v);
  CHECK(find_isomorphism(doc.algebras[0].second, upset_algebra_ptr(v)).has_value());
}

TEST_CASE("check commands") {
  TempFile file(kConstant, "esakia_cli_constant.txt");
  const std::string path = file.path.string();

  auto strict = run({"check", "strict", path, "--map", "f"});
  CHECK(strict.code == 1);
  CHECK(strict.out.find("two elements above a map to pt") != std::string::npos);
  CHECK(strict.out.find("WITNESS: above a: a b -> pt") != std::string::npos);

  auto etale = run({"check", "etale", path, "--map", "f"});
  CHECK(etale.code == 1);
  CHECK(etale.out.find("WITNESS: upset {b}") != std::string::npos);

  CHECK(run({"check", "pmorphism", path, "--map", "f"}).code == 0);
  CHECK(run({"check", "strict", path, "--map", "id"}).code == 0);
  CHECK(run({"check", "etale", path, "--map", "id"}).code == 0);

  auto swap = run({"check", "monotone", path, "--map", "swap"});
  CHECK(swap.code == 1);
  CHECK(swap.out.find("WITNESS: order a b") != std::string::npos);

  auto down = run({"check", "pmorphism", path, "--map", "down"});
  CHECK(down.code == 1);
  CHECK(down.out.find("WITNESS: back a b") != std::string::npos);

  CHECK(run({"check", "strict", path, "--map", "nope"}).code == 2);
  CHECK(run({"check", "bogus", path, "--map", "f"}).code == 2);
  CHECK(run({"check", "strict", "/nonexistent/file", "--map", "f"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("dot output") {
  TempFile file("poset C2\nelem a b\ncover a b\n", "esakia_cli_c2.txt");
  auto dot = run({"dot", "--poset", file.path.string()});
  CHECK(dot.code == 0);
  CHECK(dot.out ==
        "digraph \"C2\" {\n  rankdir=BT;\n  n0 [label=\"a\"];\n  n1 [label=\"b\"];\n  n0 -> n1;\n}\n");
  CHECK(run({"dot", "--poset", file.path.string()}).out == dot.out);
}

TEST_CASE("constructions from the command line") {
  TempFile file(kConstant, "esakia_cli_constructions.txt");
  const std::string path = file.path.string();

  // outputs refer to declarations of the input and parse when appended to it
  auto g = run({"grothendieck", path, "--presheaf", "L"});
  CHECK(g.code == 0);
  const auto total = parse_document(std::string(kConstant) + g.out);
  const PosetPtr* int_l = total.find_poset("Int_L");
  REQUIRE(int_l);
  CHECK((*int_l)->size() == 3);
  REQUIRE(total.find_map("pi_L"));
  CHECK(is_strict_p_morphism(*total.find_map("pi_L")));

  auto prod = run({"product", path, "--left", "L", "--right", "L"});
  CHECK(prod.code == 0);
  const auto square = parse_document(std::string(kConstant) + g.out + prod.out);
  REQUIRE(square.find_poset("Prod_L_L"));
  CHECK((*square.find_poset("Prod_L_L"))->size() == 5);
  REQUIRE(square.find_map("p2_Prod_L_L"));
  CHECK(is_monotone(*square.find_map("p2_Prod_L_L")));

  auto mixed = run({"product", path, "--left", "id", "--right", "id"});
  CHECK(mixed.code == 0);
  CHECK(mixed.out.find("map p1_Prod_id_id Prod_id_id C2") != std::string::npos);

  auto push = run({"pushout", path, "--left", "L", "--right", "id"});
  CHECK(push.code == 0);
  CHECK(push.out.rfind("algebra ", 0) == 0);
  CHECK(push.out.find("hom i1_Push_L_id Up_Int_L Push_L_id") != std::string::npos);
  CHECK(push.out.find("hom i2_Push_L_id Up_C2 Push_L_id") != std::string::npos);

  auto dual = run({"dualize", "--poset", path});
  CHECK(dual.code == 0);
  const auto algebras = parse_document(dual.out);
  CHECK(algebras.algebras.size() == 2);
  CHECK(algebras.algebras[0].second->size() == 3);

  auto bundle = run({"dot", "--bundle", path});
  CHECK(bundle.code == 0);
  CHECK(bundle.out.find("subgraph cluster_0") != std::string::npos);
}

TEST_CASE("verify command") {
  auto ok = run({"verify", "--suite", "strict-etale", "--max-base", "2", "--max-total", "3"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("strict p-morphism iff dual satisfies E_H") != std::string::npos);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
}
