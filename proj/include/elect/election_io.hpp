#pragma once

// Election text format:
//
//   # comment
//   candidates: p,a,b
//   tiebreak: p,a,b        (optional, defaults to candidate order)
//   2: a>b>p
//   1: p>b>a
//
// Duplicate vote lines are merged by summing counts.

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "elect/election.hpp"

namespace elect {

class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? what + ", line " + std::to_string(line) : what), line_(line) {}
    int line() const { return line_; }

   private:
    int line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        auto at = s.find(sep);
        out.push_back(trim(s.substr(0, at)));
        if (at == std::string_view::npos) break;
        s.remove_prefix(at + 1);
    }
    return out;
}

inline bool valid_name(std::string_view name) {
    if (name.empty()) return false;
    for (char ch : name) {
        if (ch == ',' || ch == '>' || ch == ':' || ch == '#' || ch == ' ' || ch == '\t') return false;
    }
    return true;
}

/// Parses a '>'- or ','-separated list of names into ids, each exactly once.
inline std::vector<CandidateId> parse_order(const std::vector<std::string>& names, std::string_view text, char sep,
                                            int line) {
    std::vector<CandidateId> order;
    std::vector<bool> seen(names.size(), false);
    for (std::string_view token : split(text, sep)) {
        if (token.empty()) throw ParseError("malformed line", line);
        CandidateId id = -1;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == token) id = static_cast<CandidateId>(i);
        }
        if (id < 0) throw ParseError("unknown candidate name '" + std::string(token) + "'", line);
        if (seen[id]) throw ParseError(sep == '>' ? "duplicate candidate in ranking" : "duplicate candidate in tiebreak", line);
        seen[id] = true;
        order.push_back(id);
    }
    if (order.size() != names.size()) {
        throw ParseError(sep == '>' ? "missing candidate in ranking" : "missing candidate in tiebreak", line);
    }
    return order;
}

}  // namespace detail

inline Election parse_election(std::string_view text) {
    std::vector<std::string> names;
    bool have_candidates = false;
    std::vector<CandidateId> tiebreak;
    bool have_tiebreak = false;
    Profile profile;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        auto hash = raw.find('#');
        std::string_view line = detail::trim(raw.substr(0, hash));
        if (line.empty()) continue;

        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError("malformed line", line_no);
        std::string_view key = detail::trim(line.substr(0, colon));
        std::string_view value = detail::trim(line.substr(colon + 1));

        if (key == "candidates") {
            if (have_candidates) throw ParseError("duplicate candidates line", line_no);
            for (std::string_view name : detail::split(value, ',')) {
                if (!detail::valid_name(name)) throw ParseError("malformed candidate name", line_no);
                for (const auto& existing : names) {
                    if (existing == name) throw ParseError("duplicate candidate name '" + std::string(name) + "'", line_no);
                }
                names.emplace_back(name);
            }
            have_candidates = true;
        } else if (key == "tiebreak") {
            if (!have_candidates) throw ParseError("tiebreak before candidates line", line_no);
            if (have_tiebreak) throw ParseError("duplicate tiebreak line", line_no);
            tiebreak = detail::parse_order(names, value, ',', line_no);
            have_tiebreak = true;
        } else {
            if (!have_candidates) throw ParseError("vote before candidates line", line_no);
            Count count = 0;
            auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), count);
            if (ec != std::errc() || ptr != key.data() + key.size() || count < 1) {
                throw ParseError("malformed line", line_no);
            }
            profile.add(Vote(detail::parse_order(names, value, '>', line_no)), count);
        }
    }
    if (!have_candidates) throw ParseError("missing candidates line", 0);

    Election base = Election::with_names(names, std::move(profile));
    if (!have_tiebreak) return base;
    return Election(base.candidates(), base.profile(), TieBreak(std::move(tiebreak)));
}

inline std::string format_vote(const Election& election, const Vote& vote) {
    std::string out;
    for (std::size_t i = 0; i < vote.size(); ++i) {
        if (i) out += '>';
        out += election.name(vote.at(i));
    }
    return out;
}

inline Vote parse_vote(const Election& election, std::string_view text) {
    std::vector<std::string> names;
    for (const auto& c : election.candidates()) names.push_back(c.name);
    return Vote(detail::parse_order(names, detail::trim(text), '>', 0));
}

inline std::string format_candidates(const Election& election, const std::vector<CandidateId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ',';
        out += election.name(ids[i]);
    }
    return out;
}

inline std::string serialize(const Election& election) {
    std::ostringstream out;
    std::vector<CandidateId> ids;
    for (const auto& c : election.candidates()) ids.push_back(c.id);
    out << "candidates: " << format_candidates(election, ids) << '\n';
    out << "tiebreak: " << format_candidates(election, election.tiebreak().priority()) << '\n';
    for (const auto& [vote, count] : election.profile()) out << count << ": " << format_vote(election, vote) << '\n';
    return out.str();
}

}  // namespace elect
