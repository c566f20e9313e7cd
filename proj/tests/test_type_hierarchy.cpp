#include <doctest.h>

#include <random>
#include <set>

#include "lexlearn/error.hpp"
#include "lexlearn/type_hierarchy.hpp"

using namespace lexlearn;

namespace {

const TypeHierarchy& demo() {
  static const TypeHierarchy h = TypeHierarchy::load(std::string(LEXLEARN_DATA_DIR) + "/demo.types");
  return h;
}

LeafSet T(const char* expr) { return demo().parse_expression(expr); }

// Independent oracle: a leaf set as a set of leaf names.
std::set<std::string> names_of(const TypeHierarchy& h, LeafSet s) {
  std::set<std::string> out;
  for (std::size_t i : s.leaves()) out.insert(h.leaf_names()[i]);
  return out;
}

}  // namespace

TEST_CASE("declarations resolve to leaf sets") {
  auto h = TypeHierarchy::parse("leaf fem masc neut\ntype non_fem = masc | neut\n");
  CHECK(names_of(h, h.at("non_fem")) == std::set<std::string>{"masc", "neut"});
  CHECK(h.top() == (h.at("fem") | h.at("masc") | h.at("neut")));
}

TEST_CASE("forward references resolve in the second pass") {
  auto h = TypeHierarchy::parse("type b = a | c\nleaf x y\ntype a = x\ntype c = y\n");
  CHECK(h.at("b") == h.top());
}

TEST_CASE("declaration errors carry line numbers") {
  auto error_line = [](const char* text) -> std::size_t {
    try {
      (void)TypeHierarchy::parse(text);
    } catch (const SyntaxError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(error_line("leaf a\ntype t = t2\n") == 2);
  CHECK(error_line("leaf a b\n\ntype p = q\ntype q = p\n") == 3);
  CHECK(error_line("leaf a b\nleaf a\n") == 2);
  CHECK(error_line("leaf a\ntype x = a |\n") == 2);
  CHECK(error_line("leaf a u_g\ntype bad = a | u_g\n") == 2);
  CHECK(error_line("leaf a\nfoo a\n") == 2);
  CHECK_THROWS_WITH_AS(TypeHierarchy::parse("leaf a\ntype t = t2"), doctest::Contains("unknown name"), SyntaxError);
}

TEST_CASE("demo hierarchy shape") {
  // Counted by loading data/demo.types.
  CHECK(demo().leaf_count() == 26);
  CHECK(demo().named_types().size() == 10);
  REQUIRE(demo().u_g());
  REQUIRE(demo().u_s());
  for (const auto& [name, value] : demo().named_types()) CHECK_FALSE(value.intersects(demo().markers()));
}

TEST_CASE("type unification") {
  CHECK(unify_types(T("non_fem"), T("neut")) == T("neut"));
  CHECK(unify_types(T("sense_organ"), T("smell")).empty());
  CHECK(unify_types(T("prd"), T("prd")) == T("prd"));
}

TEST_CASE("type union") {
  CHECK(union_types(T("pred"), T("attr")) == T("prd"));
  CHECK(union_types(T("u_g"), T("attr")) != T("prd"));
  CHECK(names_of(demo(), union_types(T("u_g"), T("attr"))) == std::set<std::string>{"u_g", "attr"});
  CHECK(union_types(T("ear"), T("nose")) == T("sense_organ"));
}

TEST_CASE("subsumption") {
  CHECK(subsumes(T("sense_organ"), T("nose")));
  CHECK_FALSE(subsumes(T("nose"), T("sense_organ")));
  CHECK(subsumes(T("nom_sem"), T("sense_organ∨smell")));
  CHECK_FALSE(strictly_subsumes(T("nom_sem"), T("nom_sem")));
  CHECK(strictly_subsumes(T("u_g∨npnom∨npnom_npacc"), T("u_g∨npnom")));
}

TEST_CASE("display") {
  CHECK(demo().display(T("pred∨attr")) == "prd");
  CHECK(demo().display(T("u_g∨ear")) == "u_g∨ear");
  CHECK(demo().display(T("nose∨smell")) == "nose∨smell");
  CHECK(demo().display(T("u_g∨npnom∨npnom_npacc")) == "u_g∨npnom∨npnom_npacc");
  CHECK(demo().display(T("u_g∨nose∨ear")) == "u_g∨sense_organ");
  CHECK(demo().display(T("u_s∨fem"), true) == "fem");
  CHECK(demo().display(T("u_s∨gender")) == "u_s∨gender");
  CHECK(demo().display(LeafSet{}) == "⊥");
  CHECK(demo().display(demo().top()) == "top");
  CHECK(T("u_g\\/attr") == T("u_g∨attr"));
}

TEST_CASE("no declared name covers {nose, smell}") {
  // Brute force over every declared name: none denotes the set, and none is
  // a proper superset contained in it, so the cover must use the two leaves.
  std::set<std::string> target{"nose", "smell"};
  for (const auto& [name, value] : demo().named_types()) {
    auto names = names_of(demo(), value);
    CHECK(names != target);
    bool inside = std::includes(target.begin(), target.end(), names.begin(), names.end());
    CHECK_FALSE((inside && names.size() > 1));
  }
}

TEST_CASE("random leaf sets: lattice laws against a set oracle") {
  std::mt19937_64 rng(1234);
  const std::uint64_t mask = demo().top().bits();
  auto random_set = [&] { return LeafSet::from_bits(rng() & mask); };
  auto oracle = [](LeafSet s) {
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < 64; ++i)
      if ((s.bits() >> i) & 1U) out.insert(i);
    return out;
  };
  for (int i = 0; i < 1000; ++i) {
    LeafSet a = random_set(), b = random_set(), c = random_set();
    std::set<std::size_t> inter, uni;
    auto oa = oracle(a), ob = oracle(b);
    std::set_intersection(oa.begin(), oa.end(), ob.begin(), ob.end(), std::inserter(inter, inter.end()));
    std::set_union(oa.begin(), oa.end(), ob.begin(), ob.end(), std::inserter(uni, uni.end()));
    REQUIRE(oracle(unify_types(a, b)) == inter);
    REQUIRE(oracle(union_types(a, b)) == uni);
    REQUIRE(unify_types(a, unify_types(b, c)) == unify_types(unify_types(a, b), c));
    REQUIRE(union_types(a, union_types(b, c)) == union_types(union_types(a, b), c));
    REQUIRE(unify_types(a, union_types(b, c)) == union_types(unify_types(a, b), unify_types(a, c)));
    REQUIRE(union_types(a, unify_types(b, c)) == unify_types(union_types(a, b), union_types(a, c)));
    REQUIRE(a.includes(unify_types(a, b)));
    REQUIRE(union_types(a, b).includes(a));
    if (!a.empty()) {
      REQUIRE(demo().parse_expression(demo().display(a)) == a);
    }
    LeafSet ug = *demo().u_g();
    REQUIRE(!unify_types(a | ug, b | ug).empty());
  }
}
