#include <catch_amalgamated.hpp>

#include <fstream>
#include <regex>
#include <set>

#include "elect/election_io.hpp"
#include "elect/oracle.hpp"
#include "elect/witness_io.hpp"
#include "support/brute.hpp"

using namespace elect;
using namespace testing_support;

namespace {

AttackInstance instance(const Rule& rule, const char* text, AttackKind kind) {
    auto e = parse_election(text);
    return {rule, std::move(e), 0, std::move(kind)};
}

// project headers reachable from `start` through #include "elect/..."
std::set<std::string> include_closure(const std::string& start) {
    std::set<std::string> seen;
    std::vector<std::string> todo{start};
    const std::regex line(R"re(#include "elect/([a-z_]+\.hpp)")re");
    while (!todo.empty()) {
        std::string name = todo.back();
        todo.pop_back();
        if (!seen.insert(name).second) continue;
        std::ifstream in(std::string(ELECT_INCLUDE) + "/elect/" + name);
        REQUIRE(in.good());
        std::string text;
        while (std::getline(in, text)) {
            std::smatch m;
            if (std::regex_search(text, m, line)) todo.push_back(m[1]);
        }
    }
    return seen;
}

}  // namespace

TEST_CASE("oracle: manipulation by hand enumeration", "[oracle]") {
    // the three ballot pairs: {p>a, p>a} wins, {p>a, a>p} and {a>p, a>p} lose
    auto inst = instance(Rule::plurality(), "candidates: p,a\ntiebreak: p,a\n2: a>p", Manipulation{2});
    auto r = oracle_solve(inst);
    REQUIRE(r.yes());
    CHECK(witness_lines(inst, *r.witness) == std::vector<std::string>{"cast 2: p>a"});
    CHECK(verify_witness(inst, r));
    CHECK_FALSE(oracle_solve(instance(Rule::plurality(), "candidates: p,a\ntiebreak: p,a\n2: a>p", Manipulation{1})).yes());
}

TEST_CASE("oracle: zero budgets decide the unmodified election", "[oracle][property]") {
    Rng rng(41);
    for (const auto& rule : standard_rules()) {
        for (int trial = 0; trial < 20; ++trial) {
            auto e = random_election(rng, 3, 6);
            auto p = static_cast<CandidateId>(rng.below(3));
            const bool wins = evaluate(rule, e) == p;
            for (AttackKind kind : {AttackKind{Manipulation{0}}, AttackKind{Bribery{0}}, AttackKind{DeleteVotes{0}},
                                    AttackKind{AddVotes{0, random_profile(rng, 3, 2)}}, AttackKind{DeleteCandidates{0}}}) {
                AttackInstance inst{rule, e, p, kind};
                auto r = oracle_solve(inst);
                REQUIRE(r.yes() == wins);
                REQUIRE(verify_witness(inst, r));
                if (r.yes() && std::holds_alternative<Bribery>(kind)) REQUIRE(r.witness->bribes.empty());
            }
        }
    }
}

TEST_CASE("oracle: refuses oversized searches", "[oracle]") {
    auto inst = instance(Rule::borda(), "candidates: p,a,b\n3: a>b>p", Manipulation{3});
    // C(6+3-1, 3) = 56 ballot multisets
    CHECK(oracle_solve(inst, OracleBudget{55}).decision == Decision::Refused);
    CHECK(oracle_solve(inst, OracleBudget{56}).decision != Decision::Refused);
    auto refused = oracle_solve(inst, OracleBudget{1});
    CHECK_FALSE(refused.witness);
    CHECK(std::string(to_string(refused.decision)) == "REFUSED");

    auto part = instance(Rule::borda(), "candidates: p,a,b\n3: a>b>p\n2: b>a>p", PartitionVotes{});
    // (3+1)(2+1) splits
    CHECK(oracle_solve(part, OracleBudget{11}).decision == Decision::Refused);
    CHECK(oracle_solve(part, OracleBudget{12}).decision != Decision::Refused);

    CHECK_THROWS_AS(oracle_solve(inst, OracleBudget{0}), std::invalid_argument);
}

TEST_CASE("oracle: every YES witness replays", "[oracle][property]") {
    Rng rng(42);
    int yes = 0;
    for (const auto& rule : standard_rules()) {
        for (VoteAttack kind : vote_attacks()) {
            for (int trial = 0; trial < 5; ++trial) {
                auto inst = random_vote_attack(rng, rule, kind, 3, 5, trial % 2 ? Mode::Destructive : Mode::Constructive);
                auto r = oracle_solve(inst);
                yes += r.yes();
                REQUIRE(verify_witness(inst, r));
            }
        }
        for (int variant = 0; variant < kCandidateVariants; ++variant) {
            auto inst = random_candidate_attack(rng, rule, variant, 4, 5);
            REQUIRE(verify_witness(inst, oracle_solve(inst)));
        }
    }
    CHECK(yes > 0);
}

TEST_CASE("oracle: first witness in enumeration order", "[oracle]") {
    // deleting either a-vote works; the smallest deletion set comes first
    auto inst = instance(Rule::plurality(), "candidates: p,a\ntiebreak: p,a\n2: a>p\n1: p>a", DeleteVotes{2});
    auto r = oracle_solve(inst);
    REQUIRE(r.yes());
    CHECK(witness_lines(inst, *r.witness) == std::vector<std::string>{"delete 1: a>p"});
}

TEST_CASE("oracle depends on core headers only", "[oracle]") {
    auto closure = include_closure("oracle.hpp");
    for (const char* banned : {"gsr.hpp", "signature.hpp", "conditions.hpp", "linear.hpp", "ilp.hpp", "simplex.hpp",
                               "attacks.hpp"}) {
        INFO(banned);
        CHECK(closure.count(banned) == 0);
    }
}
