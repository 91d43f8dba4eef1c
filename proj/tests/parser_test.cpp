#include <gtest/gtest.h>

#include "sdr/domains.hpp"
#include "sdr/errors.hpp"
#include "sdr/grounder.hpp"
#include "sdr/parser.hpp"

namespace sdr {
namespace {

constexpr const char* kTiny = R"(
(define (domain tiny)
  (:predicates (p) (q))
  (:action flip
    :precondition (and (p))
    :effect (and (q) (not (p))))
  (:action look
    :observe (q)))
)";

constexpr const char* kTinyProblem = R"(
(define (problem tiny-1)
  (:domain tiny)
  (:init (p) (or (q) (not (q))))
  (:goal (and (q))))
)";

TEST(Parser, MinimalDomain) {
  const LiftedDomain d = parse_domain(kTiny);
  EXPECT_EQ(d.name, "tiny");
  ASSERT_EQ(d.predicates.size(), 2U);
  ASSERT_EQ(d.actions.size(), 2U);
  EXPECT_EQ(d.actions[0].name, "flip");
  EXPECT_EQ(d.actions[0].precondition.size(), 1U);
  ASSERT_EQ(d.actions[0].effects.size(), 2U);
  EXPECT_TRUE(d.actions[0].effects[0].condition.empty());
  ASSERT_EQ(d.actions[1].observes.size(), 1U);
  EXPECT_EQ(d.actions[1].observes[0].predicate, "q");
}

TEST(Parser, DiseasesSchemas) {
  const auto g = generate({"diseases", {{"n", 2}}, 0});
  const LiftedDomain d = parse_domain(g.domain);
  std::vector<std::string> names;
  for (const auto& a : d.actions) names.push_back(a.name);
  EXPECT_EQ(names, (std::vector<std::string>{"test", "treat", "observe-test-result"}));
  EXPECT_EQ(d.actions[0].effects.size(), 2U);
  EXPECT_EQ(d.actions[0].effects[0].condition.size(), 1U);
  EXPECT_TRUE(d.actions[2].effects.empty());
  const LiftedProblem p = parse_problem(g.problem, d);
  EXPECT_EQ(p.objects.size(), 2U);
  EXPECT_EQ(p.goal.size(), 2U);
}

TEST(Parser, UnbalancedParenReportsPosition) {
  const std::string text = "(define (problem x)\n  (:domain tiny)\n  (:init (oneof p\n";
  try {
    parse_problem(text, parse_domain(kTiny));
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_GE(e.line(), 1U);
    EXPECT_GE(e.column(), 1U);
  }
}

TEST(Parser, UnexpectedCloseReportsLine) {
  try {
    parse_domain("(define (domain d)\n  (:predicates (p)))\n)");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

TEST(Parser, UndeclaredPredicateIsSemanticError) {
  const std::string d = R"((define (domain d) (:predicates (p))
    (:action a :effect (and (r)))))";
  EXPECT_THROW(parse_domain(d), SemanticError);
}

TEST(Parser, WrongArityIsSemanticError) {
  const std::string d = R"((define (domain d) (:predicates (p ?x))
    (:action a :parameters (?x) :effect (and (p ?x ?x)))))";
  EXPECT_THROW(parse_domain(d), SemanticError);
}

TEST(Parser, UnknownObjectInProblem) {
  const std::string d = R"((define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) :effect (and (p ?x)))))";
  const std::string p = R"((define (problem q) (:domain d) (:objects o) (:init (p z)) (:goal (and (p o)))))";
  EXPECT_THROW(parse(d, p), SemanticError);
}

TEST(Parser, DomainNameMismatch) {
  const std::string p = R"((define (problem q) (:domain other) (:init) (:goal (and (q)))))";
  EXPECT_THROW(parse_problem(p, parse_domain(kTiny)), SemanticError);
}

TEST(Grounder, DiseasesSizes) {
  const auto g = generate({"diseases", {{"n", 2}}, 0});
  const Problem p = load_problem(g.domain, g.problem);
  EXPECT_EQ(p.num_props(), 3U);
  EXPECT_EQ(p.actions().size(), 5U);
  EXPECT_EQ(p.goal().size(), 2U);
}

TEST(Grounder, WumpusInitHasTwoOneofs) {
  const auto g = generate({"wumpus", {{"n", 4}}, 0});
  const Problem p = load_problem(g.domain, g.problem);
  std::size_t oneofs = 0;
  for (const Formula& f : p.init().children()) oneofs += f.kind() == Formula::Kind::OneOf;
  EXPECT_EQ(oneofs, 2U);
  EXPECT_FALSE(p.find_prop("adj-1-1-1-2"));  // static, folded away
  EXPECT_TRUE(p.find_action("move-1-1-1-2"));
  EXPECT_FALSE(p.find_action("move-1-1-3-3"));
}

TEST(Grounder, InconsistentActionIsRejected) {
  const std::string d = R"((define (domain d) (:predicates (p) (q))
    (:action a :effect (and (when (q) (p)) (not (p))))))";
  const std::string p = R"((define (problem x) (:domain d) (:init (or (q) (not (q)))) (:goal (and (p)))))";
  EXPECT_THROW(load_problem(d, p), ConsistencyError);
  GroundOptions opts;
  opts.check_consistency = false;
  EXPECT_NO_THROW(load_problem(d, p, opts));
}

TEST(Grounder, MixedActionsAreSplit) {
  const std::string d = R"((define (domain d) (:predicates (p) (q))
    (:action a :effect (and (p)) :observe (q))))";
  const std::string p = R"((define (problem x) (:domain d) (:init (or (q) (not (q)))) (:goal (and (p)))))";
  const Problem g = load_problem(d, p);
  ASSERT_TRUE(g.find_action("a"));
  ASSERT_TRUE(g.find_action("sense-a"));
  EXPECT_FALSE(g.action(g.action_id("a")).is_sensing());
  EXPECT_TRUE(g.action(g.action_id("sense-a")).is_sensing());
  EXPECT_FALSE(g.action(g.action_id("sense-a")).changes_state());
}

TEST(Grounder, ClosedWorldInit) {
  const Problem p = load_problem(kTiny, kTinyProblem);
  const Belief b = enumerate_initial_states(p);
  EXPECT_EQ(b.size(), 2U);
  for (const State& s : b) EXPECT_TRUE(s.holds(p.lit("p")));
}

class FamilyRoundTrip : public ::testing::TestWithParam<std::string> {};

TEST_P(FamilyRoundTrip, TextRoundTripPreservesStructure) {
  const auto g = generate({GetParam(), {}, 3});
  const auto [d, p] = parse(g.domain, g.problem);
  const std::string dt = to_text(d);
  const std::string pt = to_text(p);
  const auto [d2, p2] = parse(dt, pt);
  EXPECT_EQ(d, d2);
  EXPECT_EQ(p, p2);
  EXPECT_EQ(to_text(d2), dt);
}

TEST_P(FamilyRoundTrip, GroundingIsDeterministic) {
  const auto g = generate({GetParam(), {}, 3});
  const Problem a = load_problem(g.domain, g.problem);
  const Problem b = load_problem(g.domain, g.problem);
  EXPECT_EQ(a.prop_names(), b.prop_names());
  ASSERT_EQ(a.actions().size(), b.actions().size());
  for (std::size_t i = 0; i < a.actions().size(); ++i) {
    EXPECT_EQ(a.actions()[i].name, b.actions()[i].name);
    EXPECT_EQ(a.actions()[i].pre, b.actions()[i].pre);
    EXPECT_EQ(a.actions()[i].effects, b.actions()[i].effects);
  }
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, FamilyRoundTrip, ::testing::ValuesIn(domain_families()),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (char& c : n) {
                             if (c == '-') c = '_';
                           }
                           return n;
                         });

}  // namespace
}  // namespace sdr
