#include <catch_amalgamated.hpp>

#include "elect/attacks.hpp"
#include "elect/election_io.hpp"
#include "elect/oracle.hpp"
#include "elect/witness_io.hpp"
#include "support/brute.hpp"

using namespace elect;
using namespace testing_support;

namespace {

using Lines = std::vector<std::string>;

Lines lines(const AttackInstance& inst, const AttackResult& r) {
    REQUIRE(r.witness);
    return witness_lines(inst, *r.witness);
}

AttackInstance instance(const Rule& rule, const char* text, AttackKind kind, const char* target = "p",
                        Mode mode = Mode::Constructive) {
    auto e = parse_election(text);
    auto p = e.find(target);
    return {rule, std::move(e), p, std::move(kind), mode};
}

Profile votes_of(const Election& e, std::initializer_list<std::pair<Count, const char*>> entries) {
    Profile out;
    for (const auto& [count, text] : entries) out.add(parse_vote(e, text), count);
    return out;
}

}  // namespace

TEST_CASE("manipulation examples", "[attacks]") {
    const char* two_a = "candidates: p,a\ntiebreak: p,a\n2: a>p";
    auto yes = instance(Rule::plurality(), two_a, Manipulation{2});
    auto r = solve_attack(yes);
    REQUIRE(r.yes());
    CHECK(lines(yes, r) == Lines{"cast 2: p>a"});
    CHECK(verify_witness(yes, r));

    CHECK_FALSE(solve_attack(instance(Rule::plurality(), two_a, Manipulation{1})).yes());

    auto noop = instance(Rule::borda(), "candidates: p,a,b\n1: p>a>b", Manipulation{0});
    auto r0 = solve_attack(noop);
    REQUIRE(r0.yes());
    CHECK(r0.witness->cast.empty());
}

TEST_CASE("bribery examples", "[attacks]") {
    auto yes = instance(Rule::plurality(), "candidates: p,a,b\n2: a>b>p\n1: p>b>a", Bribery{1});
    auto r = solve_attack(yes);
    REQUIRE(r.yes());
    REQUIRE(r.witness->bribes.size() == 1);
    const auto& b = r.witness->bribes[0];
    CHECK(b.count == 1);
    CHECK(yes.election.name(b.from.at(0)) == "a");
    CHECK(r.winner == yes.election.find("p"));
    CHECK(verify_witness(yes, r));

    CHECK_FALSE(solve_attack(instance(Rule::plurality(), "candidates: p,a,b\n4: a>b>p\n1: p>b>a", Bribery{1})).yes());

    auto zero_win = solve_attack(instance(Rule::plurality(), "candidates: p,a\n1: p>a", Bribery{0}));
    REQUIRE(zero_win.yes());
    CHECK(zero_win.witness->bribes.empty());
    CHECK_FALSE(solve_attack(instance(Rule::plurality(), "candidates: p,a\n1: a>p", Bribery{0})).yes());
}

TEST_CASE("add-votes examples", "[attacks]") {
    const char* reg = "candidates: p,a\ntiebreak: p,a\n2: a>p";
    auto e = parse_election(reg);
    Profile pool = votes_of(e, {{3, "p>a"}});
    auto two = instance(Rule::plurality(), reg, AddVotes{2, pool});
    auto r = solve_attack(two);
    REQUIRE(r.yes());
    CHECK(lines(two, r) == Lines{"add 2: p>a"});
    CHECK_FALSE(solve_attack(instance(Rule::plurality(), reg, AddVotes{1, pool})).yes());
    CHECK_FALSE(solve_attack(instance(Rule::plurality(), reg, AddVotes{0, pool})).yes());
    CHECK(solve_attack(instance(Rule::plurality(), "candidates: p,a\n1: p>a", AddVotes{0, pool})).yes());

    Profile wrong;
    wrong.add(Vote({0, 1, 2}));
    CHECK_THROWS_AS(solve_attack(instance(Rule::plurality(), reg, AddVotes{1, wrong})), std::invalid_argument);
}

TEST_CASE("delete-votes examples", "[attacks]") {
    auto one = instance(Rule::plurality(), "candidates: p,a\ntiebreak: p,a\n2: a>p\n1: p>a", DeleteVotes{1});
    auto r = solve_attack(one);
    REQUIRE(r.yes());
    CHECK(lines(one, r) == Lines{"delete 1: a>p"});

    CHECK_FALSE(solve_attack(instance(Rule::plurality(), "candidates: p,a\n2: a>p", DeleteVotes{0})).yes());

    // removing the only vote leaves the empty profile, which elects p
    auto veto = instance(Rule::veto(), "candidates: p,a\ntiebreak: p,a\n1: a>p", DeleteVotes{1});
    auto rv = solve_attack(veto);
    REQUIRE(rv.yes());
    CHECK(lines(veto, rv) == Lines{"delete 1: a>p"});
}

TEST_CASE("partition-votes examples", "[attacks]") {
    auto te = instance(Rule::plurality(), "candidates: p,a\n1: p>a", PartitionVotes{TieModel::TiesEliminate});
    auto r = solve_attack(te);
    REQUIRE(r.yes());
    CHECK(lines(te, r) == Lines{"part1 1: p>a"});
    CHECK(r.witness->second.empty());

    auto lost = instance(Rule::plurality(), "candidates: p,a\ntiebreak: a,p\n3: a>p", PartitionVotes{TieModel::TiesEliminate});
    CHECK_FALSE(solve_attack(lost).yes());
    CHECK_FALSE(oracle_solve(lost).yes());

    auto tp = instance(Rule::plurality(), "candidates: p,a\n2: p>a\n1: a>p", PartitionVotes{TieModel::TiesPromote});
    auto rt = solve_attack(tp);
    REQUIRE(rt.yes());
    CHECK(verify_witness(tp, rt));
}

TEST_CASE("candidate-control examples", "[attacks]") {
    const char* text = "candidates: p,a,b\ntiebreak: p,a,b\n2: a>p>b\n2: b>p>a\n1: p>a>b";
    auto del = instance(Rule::plurality(), text, DeleteCandidates{1});
    auto r = solve_attack(del);
    REQUIRE(r.yes());
    CHECK(lines(del, r) == Lines{"delete-candidates: a"});
    CHECK_FALSE(solve_attack(instance(Rule::plurality(), text, DeleteCandidates{0})).yes());

    // s is a spoiler: without it a wins; with it s takes first places from a
    const char* spoil = "candidates: p,a,s\ntiebreak: p,a,s\n3: a>p>s\n2: p>a>s\n2: s>a>p";
    auto as_is = instance(Rule::plurality(), spoil, AddCandidates{true, 0, {2}});
    CHECK_FALSE(solve_attack(as_is).yes());
    auto add = instance(Rule::plurality(), spoil, AddCandidates{true, 1, {2}});
    CHECK_FALSE(solve_attack(add).yes());
    auto add_borda = instance(Rule::borda(), spoil, AddCandidates{true, 5, {2}});
    auto rb = solve_attack(add_borda);
    CHECK(rb.yes() == oracle_solve(add_borda).yes());
    CHECK(verify_witness(add_borda, rb));

    auto part = instance(Rule::plurality(), text, PartitionCandidates{false, TieModel::TiesPromote});
    auto rp = solve_attack(part);
    CHECK(rp.yes() == oracle_solve(part).yes());
    CHECK(verify_witness(part, rp));
}

TEST_CASE("destructive examples", "[attacks]") {
    auto a_wins = instance(Rule::plurality(), "candidates: p,a\n1: a>p", Manipulation{0}, "p", Mode::Destructive);
    CHECK(solve_attack(a_wins).yes());
    auto p_wins = instance(Rule::plurality(), "candidates: p,a\n1: p>a", Manipulation{0}, "p", Mode::Destructive);
    CHECK_FALSE(solve_attack(p_wins).yes());

    auto bribe = instance(Rule::plurality(), "candidates: p,a\ntiebreak: a,p\n2: p>a", Bribery{1}, "p", Mode::Destructive);
    auto r = solve_attack(bribe);
    REQUIRE(r.yes());
    CHECK(lines(bribe, r) == Lines{"bribe 1: p>a -> a>p"});
    CHECK(r.winner == bribe.election.find("a"));
    CHECK(verify_witness(bribe, r));

    CHECK_FALSE(solve_attack(instance(Rule::borda(), "candidates: p,a,b\n1: p>a>b", Bribery{0}, "p", Mode::Destructive)).yes());
}

TEST_CASE("instance validation", "[attacks]") {
    auto bad_target = instance(Rule::plurality(), "candidates: p,a\n1: p>a", Bribery{1});
    bad_target.target = 5;
    CHECK_THROWS_AS(solve_attack(bad_target), std::invalid_argument);
    CHECK_THROWS_AS(solve_attack(instance(Rule::plurality(), "candidates: p,a\n1: p>a", Bribery{-1})), std::invalid_argument);
    CHECK_THROWS_AS(solve_attack(instance(Rule::plurality(), "candidates: p,a\n1: p>a", AddCandidates{true, 1, {0, 1}})),
                    std::invalid_argument);
}

TEST_CASE("vote attacks agree with the oracle", "[attacks][property]") {
    Rng rng(31);
    for (const auto& rule : standard_rules()) {
        for (VoteAttack kind : vote_attacks()) {
            for (int trial = 0; trial < 12; ++trial) {
                int m = trial % 4 == 3 ? 2 : 3;
                Mode mode = trial % 3 == 2 ? Mode::Destructive : Mode::Constructive;
                auto inst = random_vote_attack(rng, rule, kind, m, 5, mode);
                INFO(rule.spec() << " " << name_of(kind) << "\n" << serialize(inst.election));
                auto main = solve_attack(inst);
                auto oracle = oracle_solve(inst);
                REQUIRE(oracle.decision != Decision::Refused);
                REQUIRE(main.decision == oracle.decision);
                REQUIRE(verify_witness(inst, main));
                REQUIRE(verify_witness(inst, oracle));
            }
        }
    }
}

TEST_CASE("vote attacks at four candidates", "[attacks][property]") {
    Rng rng(32);
    for (const auto& rule : {Rule::plurality(), Rule::borda(), Rule::maximin(), Rule::copeland(make_rational(1, 2))}) {
        for (VoteAttack kind : vote_attacks()) {
            for (int trial = 0; trial < 3; ++trial) {
                auto inst = random_vote_attack(rng, rule, kind, 4, 4);
                INFO(rule.spec() << " " << name_of(kind) << "\n" << serialize(inst.election));
                auto main = solve_attack(inst);
                auto oracle = oracle_solve(inst);
                REQUIRE(main.decision == oracle.decision);
                REQUIRE(verify_witness(inst, main));
            }
        }
    }
}

TEST_CASE("candidate control agrees with the oracle", "[attacks][property]") {
    Rng rng(33);
    for (const auto& rule : standard_rules()) {
        for (int variant = 0; variant < kCandidateVariants; ++variant) {
            for (int trial = 0; trial < 8; ++trial) {
                Mode mode = trial % 2 ? Mode::Destructive : Mode::Constructive;
                auto inst = random_candidate_attack(rng, rule, variant, 3 + trial % 2, 6, mode);
                INFO(rule.spec() << " variant " << variant << "\n" << serialize(inst.election));
                auto main = solve_attack(inst);
                REQUIRE(main.decision == oracle_solve(inst).decision);
                REQUIRE(verify_witness(inst, main));
            }
        }
    }
}

TEST_CASE("larger budgets never hurt", "[attacks][property]") {
    Rng rng(34);
    for (const auto& rule : standard_rules()) {
        for (int trial = 0; trial < 15; ++trial) {
            auto e = random_election(rng, 3, 5);
            Profile pool = random_profile(rng, 3, 3);
            auto p = static_cast<CandidateId>(rng.below(3));
            for (Count k = 0; k < 3; ++k) {
                AttackInstance lo{rule, e, p, Bribery{k}}, hi{rule, e, p, Bribery{k + 1}};
                if (solve_attack(lo).yes()) REQUIRE(solve_attack(hi).yes());
                AttackInstance dlo{rule, e, p, DeleteVotes{k}}, dhi{rule, e, p, DeleteVotes{k + 1}};
                if (solve_attack(dlo).yes()) REQUIRE(solve_attack(dhi).yes());
                AttackInstance alo{rule, e, p, AddVotes{k, pool}}, ahi{rule, e, p, AddVotes{k + 1, pool}};
                if (solve_attack(alo).yes()) REQUIRE(solve_attack(ahi).yes());
            }
        }
    }
}

TEST_CASE("destructive equals some rival winning constructively", "[attacks][property]") {
    Rng rng(35);
    for (const auto& rule : standard_rules()) {
        for (VoteAttack kind : vote_attacks()) {
            for (int trial = 0; trial < 3; ++trial) {
                auto inst = random_vote_attack(rng, rule, kind, 3, 4, Mode::Destructive);
                bool any = false;
                for (int rival = 0; rival < 3; ++rival) {
                    if (rival != inst.target) any = any || oracle_solve(inst.retargeted(rival, Mode::Constructive)).yes();
                }
                REQUIRE(solve_destructive(inst).yes() == any);
            }
        }
    }
}

TEST_CASE("solves are deterministic", "[attacks]") {
    Rng rng(36);
    for (VoteAttack kind : vote_attacks()) {
        for (int trial = 0; trial < 10; ++trial) {
            auto inst = random_vote_attack(rng, Rule::borda(), kind, 3, 5);
            auto a = solve_attack(inst), b = solve_attack(inst);
            REQUIRE(a.decision == b.decision);
            REQUIRE(a.witness == b.witness);
        }
    }
}

TEST_CASE("manipulation on a hundred thousand voters", "[attacks]") {
    auto e = parse_election("candidates: p,a,b\ntiebreak: a,b,p\n40000: a>b>p\n30000: b>a>p\n15000: p>a>b\n10000: p>b>a\n"
                            "3000: a>p>b\n2000: b>p>a");
    auto r = solve_manipulation(Rule::borda(), e, e.find("p"), 1000);
    AttackInstance inst{Rule::borda(), e, e.find("p"), Manipulation{1000}};
    CHECK_FALSE(r.yes());
    auto big = solve_manipulation(Rule::borda(), e, e.find("p"), 60000);
    REQUIRE(big.yes());
    AttackInstance big_inst{Rule::borda(), e, e.find("p"), Manipulation{60000}};
    CHECK(verify_witness(big_inst, big));
    CHECK(verify_witness(inst, r));
}
