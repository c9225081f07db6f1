// The loan problem and the two-feature toy system shared by the tests.
#ifndef COGS_TESTS_FIXTURES_HPP
#define COGS_TESTS_FIXTURES_HPP

#include <string>

#include "cogs/rules.hpp"
#include "cogs/schema.hpp"
#include "cogs/state.hpp"

namespace cogs::fixtures {

inline const char* const loan_schema_text =
    "feature age: numeric [18,99] step 1, monotone_increasing.\n"
    "feature debt: numeric [0,1000000] step 100.\n"
    "feature bank_balance: numeric [0,10000000] step 100.\n"
    "feature credit_score: numeric [300,850] step 1, causal_only.\n";

inline const char* const q1_text = "decision reject :- bank_balance < 60000.\n";
inline const char* const q2_text = "decision reject :- credit_score < 600.\n";
inline const char* const c1_text = "causal credit_score == 620 :- debt == 0.\n";

inline FeatureSchemaSet loan_schema() { return load_schema(loan_schema_text); }
inline RuleSet loan_q1() { return parse_ruleset(q1_text, loan_schema()); }
inline RuleSet loan_q() { return parse_ruleset(std::string(q1_text) + q2_text, loan_schema()); }
inline RuleSet loan_c() { return parse_ruleset(c1_text, loan_schema()); }

inline State loan_state(int age, int debt, int balance, int credit) {
    return State({Value(age), Value(debt), Value(balance), Value(credit)});
}
inline State john() { return loan_state(31, 5000, 40000, 599); }

inline FeatureSchemaSet toy_schema() {
    return load_schema("feature x: numeric [0,1] step 1.\nfeature y: numeric [0,1] step 1.\n");
}
inline RuleSet toy_q() { return parse_ruleset("decision reject :- x == 0.", toy_schema()); }
inline RuleSet toy_c() { return parse_ruleset("causal y == 1 :- x == 1.", toy_schema()); }
inline State toy(int x, int y) { return State({Value(x), Value(y)}); }

}  // namespace cogs::fixtures

#endif  // COGS_TESTS_FIXTURES_HPP
