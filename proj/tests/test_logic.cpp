#include <algorithm>

#include "doctest.h"
#include "rsaware/program.hpp"
#include "rsaware/rng.hpp"

using namespace rsaware;

namespace {

Program prog(const char* text, int k) { return Program::from_formula(Formula::parse(text, k)); }

const char* kXor = "(c1 & !c2) | (!c1 & c2)";
const char* kNand = "!c1 | !c2";

}  // namespace

TEST_CASE("concept packing is big-endian with c1 most significant") {
    const Concept c = Concept::from_bits({1, 0});
    CHECK(c.index() == 2);
    CHECK(c.bit(0) == 1);
    CHECK(c.bit(1) == 0);
    CHECK(c.str() == "(1,0)");
    CHECK(Concept::parse("(1,0)", 2) == c);
    CHECK(Concept(3, 5).str() == "(1,0,1)");
    CHECK(c.with_bit(1, 1) == Concept(2, 3));
    CHECK(Concept(2, 0).hamming(Concept(2, 3)) == 2);
    CHECK(!Concept::parse("(1,0", 2).has_value());
    CHECK(!Concept::parse("(1,0)", 3).has_value());
}

TEST_CASE("concept sets store elements in ascending code order") {
    ConceptSet s(2);
    s.insert(Concept(2, 3));
    s.insert(Concept(2, 1));
    s.insert(Concept(2, 1));
    CHECK(s.size() == 2);
    CHECK(s.contains(Concept(2, 1)));
    CHECK(!s.contains(Concept(2, 0)));
    const auto el = s.elements();
    REQUIRE(el.size() == 2);
    CHECK(el[0].index() == 1);
    CHECK(el[1].index() == 3);
    CHECK(s == ConceptSet::of(2, {1, 3}));
    CHECK(s.is_subset_of(ConceptSet::full(2)));
    CHECK(!ConceptSet::full(2).is_subset_of(s));
    CHECK(s.str() == "{(0,1), (1,1)}");
}

TEST_CASE("formula parsing follows the documented grammar") {
    CHECK(prog(kXor, 2).table() == std::vector<int>{0, 1, 1, 0});
    CHECK(prog(kNand, 2).table() == std::vector<int>{1, 1, 1, 0});
    CHECK(prog("c1", 2).table() == std::vector<int>{0, 0, 1, 1});
    CHECK(prog("c1 ^ c2", 2).table() == prog(kXor, 2).table());
    CHECK(prog("T", 1).table() == std::vector<int>{1, 1});
    CHECK(prog("F", 1).table() == std::vector<int>{0, 0});

    SUBCASE("precedence: ! > & > ^ > | > ->") {
        // (!c1) & c2 first, then ^ c3, then | F
        CHECK(prog("!c1 & c2 ^ c3 | F", 3).table() ==
              prog("((!c1) & c2) ^ c3", 3).table());
        // a -> (b -> c): only (1,1,0) falsifies
        CHECK(prog("c1 -> c2 -> c3", 3).table() == std::vector<int>{1, 1, 1, 1, 1, 1, 0, 1});
    }

    SUBCASE("errors carry position info") {
        CHECK_THROWS_AS(Formula::parse("c3", 2), ParseError);
        CHECK_THROWS_AS(Formula::parse("c1 &", 2), ParseError);
        CHECK_THROWS_AS(Formula::parse("(c1 | c2", 2), ParseError);
        CHECK_THROWS_AS(Formula::parse("c1 c2", 2), ParseError);
        CHECK_THROWS_AS(Formula::parse("c0", 2), ParseError);
        CHECK_THROWS_AS(Formula::parse("", 2), ParseError);
        try {
            Formula::parse("c1 &\n& c2", 2);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
        }
    }
}

TEST_CASE("consistent sets partition the concept space") {
    const Program x = prog(kXor, 2);
    CHECK(x.consistent_set(1) == ConceptSet::of(2, {1, 2}));
    CHECK(x.consistent_set(0) == ConceptSet::of(2, {0, 3}));
    CHECK(prog(kNand, 2).consistent_set(0) == ConceptSet::of(2, {3}));
    CHECK_THROWS_AS(x.consistent_set(2), std::out_of_range);

    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 2 + static_cast<int>(rng.uniform_index(2));
        const int labels = 2 + static_cast<int>(rng.uniform_index(2));
        std::vector<int> table(std::size_t{1} << k);
        for (int& t : table) t = static_cast<int>(rng.uniform_index(labels));
        const Program p = Program::from_table(k, labels, table);
        std::size_t total = 0;
        for (int y = 0; y < labels; ++y) {
            const ConceptSet cs = p.consistent_set(y);
            total += cs.size();
            for (const Concept& w : cs.elements()) CHECK(p.label_of(w) == y);
        }
        CHECK(total == (std::size_t{1} << k));
    }
}

TEST_CASE("covers enumerate all extensions of a partial assignment") {
    const IncompleteConcept c1_is_0 = IncompleteConcept::from_assignments(2, {{0, 0}});
    CHECK(c1_is_0.cover() == ConceptSet::of(2, {0, 1}));
    CHECK(c1_is_0.str() == "(0,*)");
    CHECK(IncompleteConcept::from_assignments(2, {{0, 1}, {1, 0}}).cover() ==
          ConceptSet::of(2, {2}));
    CHECK(IncompleteConcept::from_assignments(2, {}).cover() == ConceptSet::full(2));

    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + static_cast<int>(rng.uniform_index(4));
        std::vector<std::pair<int, int>> assigns;
        for (int i = 0; i < k; ++i)
            if (rng.uniform() < 0.5)
                assigns.emplace_back(i, static_cast<int>(rng.uniform_index(2)));
        const IncompleteConcept wd = IncompleteConcept::from_assignments(k, assigns);
        CHECK(wd.cover().size() == (std::size_t{1} << (k - wd.defined_count())));
        for (const Concept& w : wd.cover().elements()) CHECK(wd.matches(w));
    }
}

TEST_CASE("implicants are exactly the partial assignments whose cover stays in one label") {
    const Program nand = prog(kNand, 2);
    const Program x = prog(kXor, 2);
    CHECK(is_implicant(nand, 1, IncompleteConcept::from_assignments(2, {{0, 0}})));
    CHECK(!is_implicant(x, 0, IncompleteConcept::from_assignments(2, {{0, 0}})));
    CHECK(is_implicant(x, 0, IncompleteConcept::from_assignments(2, {{0, 0}, {1, 0}})));

    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = 2 + static_cast<int>(rng.uniform_index(2));
        std::vector<int> table(std::size_t{1} << k);
        for (int& t : table) t = static_cast<int>(rng.uniform_index(2));
        const Program p = Program::from_table(k, 2, table);
        std::vector<std::pair<int, int>> assigns;
        for (int i = 0; i < k; ++i)
            if (rng.uniform() < 0.6)
                assigns.emplace_back(i, static_cast<int>(rng.uniform_index(2)));
        const IncompleteConcept wd = IncompleteConcept::from_assignments(k, assigns);
        const int y = static_cast<int>(rng.uniform_index(2));
        CHECK(is_implicant(p, y, wd) == wd.cover().is_subset_of(p.consistent_set(y)));
    }
}

TEST_CASE("implicant cover enumeration matches the worked programs") {
    const Program x = prog(kXor, 2);
    const auto xor0 = enumerate_implicant_covers(x, 0);
    REQUIRE(xor0.size() == 2);
    CHECK(std::find(xor0.begin(), xor0.end(), ConceptSet::of(2, {0})) != xor0.end());
    CHECK(std::find(xor0.begin(), xor0.end(), ConceptSet::of(2, {3})) != xor0.end());

    const Program c1 = prog("c1", 2);
    const auto c1y1 = enumerate_implicant_covers(c1, 1);
    REQUIRE(c1y1.size() == 3);
    CHECK(c1y1[0] == ConceptSet::of(2, {2, 3}));  // |D| ascending: the size-2 cover first
    CHECK(std::find(c1y1.begin(), c1y1.end(), ConceptSet::of(2, {2})) != c1y1.end());
    CHECK(std::find(c1y1.begin(), c1y1.end(), ConceptSet::of(2, {3})) != c1y1.end());

    const Program three = Program::from_table(2, 3, {0, 1, 1, 0});
    CHECK(enumerate_implicant_covers(three, 2).empty());

    // every returned cover is a subset of the consistent set, and no valid
    // cover set is missed
    for (int y : {0, 1}) {
        const auto covers = enumerate_implicant_covers(c1, y);
        for (const auto& c : covers) CHECK(c.is_subset_of(c1.consistent_set(y)));
    }
}

TEST_CASE("program construction validates its inputs") {
    CHECK_THROWS_AS(Program::from_table(2, 2, {0, 1, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Program::from_table(2, 2, {0, 1}), std::invalid_argument);
    const Program p = prog(kXor, 2);
    CHECK(p.label_count() == 2);
    CHECK(p.label_of(Concept(2, 1)) == 1);
}
