#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "elect/rational.hpp"

namespace elect {

enum class RuleFamily { Positional, Copeland, Maximin, Bucklin, Stv, Nanson, Baldwin, RankedPairs };

/// Voting rule descriptor. Positional shorthands keep their name so the
/// scoring vector can be expanded for any m.
class Rule {
   public:
    enum class Scoring { Custom, Borda, Plurality, Veto, Approval };

    static Rule borda() { return Rule(RuleFamily::Positional, Scoring::Borda); }
    static Rule plurality() { return Rule(RuleFamily::Positional, Scoring::Plurality); }
    static Rule veto() { return Rule(RuleFamily::Positional, Scoring::Veto); }
    static Rule approval(int r) {
        if (r < 1) throw std::invalid_argument("approval count must be at least 1");
        Rule rule(RuleFamily::Positional, Scoring::Approval);
        rule.approvals_ = r;
        return rule;
    }
    static Rule positional(std::vector<Rational> lambda) {
        if (lambda.empty()) throw std::invalid_argument("empty scoring vector");
        for (std::size_t i = 1; i < lambda.size(); ++i) {
            if (lambda[i] > lambda[i - 1]) throw std::invalid_argument("scoring vector must be nonincreasing");
        }
        Rule rule(RuleFamily::Positional, Scoring::Custom);
        rule.lambda_ = std::move(lambda);
        return rule;
    }
    static Rule copeland(Rational alpha) {
        if (alpha < 0 || alpha > 1) throw std::invalid_argument("Copeland alpha must lie in [0,1]");
        Rule rule(RuleFamily::Copeland, Scoring::Custom);
        rule.alpha_ = std::move(alpha);
        return rule;
    }
    static Rule maximin() { return Rule(RuleFamily::Maximin, Scoring::Custom); }
    static Rule bucklin() { return Rule(RuleFamily::Bucklin, Scoring::Custom); }
    static Rule stv() { return Rule(RuleFamily::Stv, Scoring::Custom); }
    static Rule nanson() { return Rule(RuleFamily::Nanson, Scoring::Custom); }
    static Rule baldwin() { return Rule(RuleFamily::Baldwin, Scoring::Custom); }
    static Rule ranked_pairs() { return Rule(RuleFamily::RankedPairs, Scoring::Custom); }

    RuleFamily family() const { return family_; }
    Scoring scoring() const { return scoring_; }
    const Rational& alpha() const { return alpha_; }
    int approvals() const { return approvals_; }

    bool is_positional() const { return family_ == RuleFamily::Positional; }
    bool is_runoff() const {
        return family_ == RuleFamily::Stv || family_ == RuleFamily::Nanson || family_ == RuleFamily::Baldwin;
    }

    /// The scoring vector for m candidates (positional rules only).
    std::vector<Rational> scoring_vector(int m) const {
        if (!is_positional()) throw std::logic_error("scoring vector requested for a non-positional rule");
        if (m < 1) throw std::invalid_argument("need at least one candidate");
        std::vector<Rational> lambda(static_cast<std::size_t>(m), Rational(0));
        switch (scoring_) {
            case Scoring::Borda:
                for (int i = 0; i < m; ++i) lambda[i] = m - 1 - i;
                break;
            case Scoring::Plurality:
                lambda[0] = 1;
                break;
            case Scoring::Veto:
                for (int i = 0; i + 1 < m; ++i) lambda[i] = 1;
                if (m == 1) lambda[0] = 0;
                break;
            case Scoring::Approval:
                if (approvals_ > m) {
                    throw std::invalid_argument("approval:" + std::to_string(approvals_) + " needs at least that many candidates");
                }
                for (int i = 0; i < approvals_; ++i) lambda[i] = 1;
                break;
            case Scoring::Custom:
                if (static_cast<int>(lambda_.size()) != m) {
                    throw std::invalid_argument("scoring vector length does not match the candidate count");
                }
                lambda = lambda_;
                break;
        }
        return lambda;
    }

    /// Canonical spec string, the inverse of parse_rule.
    std::string spec() const {
        switch (family_) {
            case RuleFamily::Positional:
                switch (scoring_) {
                    case Scoring::Borda: return "borda";
                    case Scoring::Plurality: return "plurality";
                    case Scoring::Veto: return "veto";
                    case Scoring::Approval: return "approval:" + std::to_string(approvals_);
                    case Scoring::Custom: {
                        std::string s = "positional:";
                        for (std::size_t i = 0; i < lambda_.size(); ++i) {
                            if (i) s += ',';
                            s += to_string(lambda_[i]);
                        }
                        return s;
                    }
                }
                break;
            case RuleFamily::Copeland: {
                Rational a = alpha_;
                return "copeland:" + a.get_num().get_str() + "/" + a.get_den().get_str();
            }
            case RuleFamily::Maximin: return "maximin";
            case RuleFamily::Bucklin: return "bucklin";
            case RuleFamily::Stv: return "stv";
            case RuleFamily::Nanson: return "nanson";
            case RuleFamily::Baldwin: return "baldwin";
            case RuleFamily::RankedPairs: return "rankedpairs";
        }
        return "?";
    }

    friend bool operator==(const Rule& a, const Rule& b) { return a.spec() == b.spec(); }

   private:
    Rule(RuleFamily family, Scoring scoring) : family_(family), scoring_(scoring) {}

    RuleFamily family_;
    Scoring scoring_;
    int approvals_ = 0;
    std::vector<Rational> lambda_;
    Rational alpha_ = 0;
};

/// Grammar: borda | plurality | veto | approval:R | copeland:NUM/DEN | maximin
///        | bucklin | stv | nanson | baldwin | rankedpairs | positional:L1,L2,...
inline Rule parse_rule(std::string_view text) {
    auto colon = text.find(':');
    std::string_view head = text.substr(0, colon);
    std::optional<std::string_view> arg;
    if (colon != std::string_view::npos) arg = text.substr(colon + 1);

    auto no_arg = [&](Rule r) {
        if (arg) throw std::invalid_argument("rule '" + std::string(head) + "' takes no parameter");
        return r;
    };
    if (head == "borda") return no_arg(Rule::borda());
    if (head == "plurality") return no_arg(Rule::plurality());
    if (head == "veto") return no_arg(Rule::veto());
    if (head == "maximin") return no_arg(Rule::maximin());
    if (head == "bucklin") return no_arg(Rule::bucklin());
    if (head == "stv") return no_arg(Rule::stv());
    if (head == "nanson") return no_arg(Rule::nanson());
    if (head == "baldwin") return no_arg(Rule::baldwin());
    if (head == "rankedpairs") return no_arg(Rule::ranked_pairs());
    if (head == "approval") {
        if (!arg || arg->empty()) throw std::invalid_argument("approval needs a count, e.g. approval:2");
        Rational r = parse_rational(*arg);
        if (!is_integral(r) || r < 1 || r > 1000) throw std::invalid_argument("approval count must be a positive integer");
        return Rule::approval(static_cast<int>(r.get_num().get_si()));
    }
    if (head == "copeland") {
        if (!arg) throw std::invalid_argument("copeland needs alpha, e.g. copeland:1/2");
        return Rule::copeland(parse_rational(*arg));
    }
    if (head == "positional") {
        if (!arg || arg->empty()) throw std::invalid_argument("positional needs a scoring vector");
        std::vector<Rational> lambda;
        std::string_view rest = *arg;
        while (true) {
            auto comma = rest.find(',');
            lambda.push_back(parse_rational(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        return Rule::positional(std::move(lambda));
    }
    throw std::invalid_argument("unknown rule '" + std::string(text) + "'");
}

}  // namespace elect
