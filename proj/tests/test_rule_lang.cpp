#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "odmx/io.hpp"
#include "odmx/rule_lang.hpp"

using namespace odmx;

namespace {

const std::string kAssets = ODMX_TEST_ASSET_DIR;

template <typename F>
ParseError parse_error(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "");
}

ParseError rule_error(std::string_view text) {
  return parse_error([&] { (void)parse_rules(text); });
}

ParseError constraint_error(std::string_view text) {
  return parse_error([&] { (void)parse_constraints(text); });
}

}  // namespace

TEST_SUITE("rules") {
  TEST_CASE("first table rule") {
    const auto rules =
        parse_rules("(?t, rdf:type, mmB:table) :- (?d, rdf:type, mmA:data), gen_id([?d, \"table1\"], ?t).");
    REQUIRE(rules.size() == 1);
    const Rule& r = rules[0];
    CHECK(std::get<Var>(r.head.subject).name() == "?t");
    CHECK(std::get<Term>(r.head.object) == Term(fixtures::b("table")));
    REQUIRE(r.body.size() == 2);
    CHECK(std::holds_alternative<TriplePattern>(r.body[0].node));
    const auto& g = std::get<GenId>(r.body[1].node);
    REQUIRE(g.parts.size() == 2);
    CHECK(std::get<Term>(g.parts[1]) == Term(Literal::string("table1")));
    CHECK(g.out.name() == "?t");
  }

  TEST_CASE("empty input") {
    CHECK(parse_rules("").empty());
    CHECK(parse_rules("  # nothing here\n\n").empty());
    CHECK(parse_constraints("").empty());
  }

  TEST_CASE("unsafe head variable") {
    const auto e = rule_error(
        "(?t, rdf:type, mmB:table) :- (?d, rdf:type, mmA:data).\n"
        "(?x, rdf:type, mmB:row) :- (?d, rdf:type, mmA:data).");
    CHECK(e.message() == "unsafe head variable ?t in rule 1");
    CHECK(e.line() == 1);
    const auto e2 = rule_error(
        "(?d, rdf:type, mmB:table) :- (?d, rdf:type, mmA:data).\n"
        "(?x, rdf:type, mmB:row) :- (?d, rdf:type, mmA:data).");
    CHECK(e2.message() == "unsafe head variable ?x in rule 2");
    CHECK(e2.line() == 2);
    CHECK(rule_error("(?_, rdf:type, mmB:row) :- (?d, rdf:type, mmA:data).").message() ==
          "unsafe head variable ?_ in rule 1");
  }

  TEST_CASE("transformation rules are negation and aggregate free") {
    CHECK(rule_error("(?d, rdf:type, mmB:row) :- (?d, rdf:type, mmA:data), not((?d, mmA:data.name, ?_)).")
              .message() == "negation not allowed in transformation rule 1");
    CHECK(rule_error("(?d, rdf:type, mmB:row) :- (?d, rdf:type, mmA:data), "
                     "count(?a over (?d, mmA:data.attr_of, ?a) groupBy(?d)) = 1.")
              .message() == "aggregate not allowed in transformation rule 1");
  }

  TEST_CASE("builtin outputs bind head variables, inputs must be bound") {
    CHECK_NOTHROW(parse_rules("(?r, mmB:row.name, ?n) :- (?r, mmA:role.name, ?a), (?r, mmA:data.name, ?b), "
                              "concat(?a, ?b, ?n)."));
    const auto e = rule_error("(?r, mmB:row.name, ?n) :- (?r, mmA:role.name, ?a), concat(?a, ?b, ?n).");
    CHECK(e.message() == "unbound builtin argument ?b at atom 2 in rule 1");
    CHECK_NOTHROW(parse_rules("(?r, mmB:row.name, ?k) :- (?r, mmA:role.name, ?n), concat(\"re\", ?k, ?n)."));
  }

  TEST_CASE("syntax errors carry positions") {
    auto e = rule_error("(?t, rdf:type, mmB:table) :- (?d, rdf:type, mmA:data)");
    CHECK(e.line() == 1);
    e = rule_error("(?t, rdf:type mmB:table) :- (?d, rdf:type, mmA:data).");
    CHECK(e.column() == 15);
    e = rule_error("\n(?t, rdf:type, nope:table) :- (?t, rdf:type, mmA:data).");
    CHECK(e.message() == "undefined prefix nope");
    CHECK(e.line() == 2);
    CHECK(e.column() == 16);
    e = rule_error("(\"lit\", rdf:type, mmB:table) :- (?t, rdf:type, mmA:data).");
    CHECK(e.column() == 1);
    CHECK(e.message() == "literal in subject or predicate position");
    e = rule_error("(?t, rdf:type, mmB:table) :- (?t, rdf:type, mmA:data), frob(?t).");
    CHECK(e.line() == 1);
  }

  TEST_CASE("prefixes, a keyword, comments and full IRIs") {
    const auto rules = parse_rules(
        "@prefix e: <http://ex.org/#> .\n"
        "# comment\n"
        "(?x, a, e:Thing) :- (?x, <http://ex.org/#p>, \"v\"^^<http://ex.org/#dt>). # trailing\n");
    REQUIRE(rules.size() == 1);
    CHECK(std::get<Term>(rules[0].head.predicate) == Term(Iri(std::string(vocab::kRdfType))));
    CHECK(std::get<Term>(rules[0].head.object) == Term(Iri("http://ex.org/#Thing")));
  }

  TEST_CASE("variables are case sensitive") {
    CHECK_THROWS_AS(parse_rules("(?T, rdf:type, mmB:table) :- (?t, rdf:type, mmA:data)."), ParseError);
  }
}

TEST_SUITE("constraints") {
  TEST_CASE("constraint 1 with its report") {
    const auto cs = parse_constraints(
        "constraint 1 attribute_distinct_names phase=source kind=SR tag=WF report(?d, ?a1, ?a2) {\n"
        "  (?d, mmA:data.attr_of, ?a1), (?d, mmA:data.attr_of, ?a2), neq(?a1,?a2),\n"
        "  (?a1, mmA:attribute.name, ?n), (?a2, mmA:attribute.name, ?n)\n"
        "}\n");
    REQUIRE(cs.size() == 1);
    const Constraint& c = cs[0];
    CHECK(c.id == ConstraintId{1, ""});
    CHECK(c.label == "attribute_distinct_names");
    CHECK(c.phase == Phase::Source);
    CHECK(c.kind == Kind::SR);
    CHECK(c.tag == Tag::WF);
    REQUIRE(c.report.size() == 3);
    CHECK(c.report[2].name() == "?a2");
    REQUIRE(c.clauses.size() == 1);
    CHECK(c.clauses[0].size() == 5);
    CHECK(std::holds_alternative<Neq>(c.clauses[0][2].node));
  }

  TEST_CASE("count atom") {
    const auto cs = parse_constraints(
        "constraint 3 exists_key phase=source kind=SR tag=TR report(?d) {\n"
        "  (?d, rdf:type, mmA:data),\n"
        "  count(?k over ((?d, mmA:data.attr_of, ?k),(?k, mmA:attribute.key, \"true\"^^xsd:boolean)) "
        "groupBy(?d)) = 0\n"
        "}");
    REQUIRE(cs.size() == 1);
    const auto& count = std::get<Count>(cs[0].clauses[0][1].node);
    CHECK(count.var.name() == "?k");
    CHECK(count.over.size() == 2);
    CHECK(count.cmp == CmpOp::Eq);
    CHECK(count.bound == 0);
    REQUIRE(count.group_by.size() == 1);
    CHECK(count.group_by[0].name() == "?d");
  }

  TEST_CASE("comparison operators") {
    const std::vector<std::pair<std::string, CmpOp>> ops{{"=", CmpOp::Eq}, {"!=", CmpOp::Ne}, {"<", CmpOp::Lt},
                                                         {">", CmpOp::Gt}, {"<=", CmpOp::Le}, {">=", CmpOp::Ge}};
    for (const auto& [text, op] : ops) {
      const auto cs = parse_constraints("constraint 4 c phase=source kind=SC tag=WF report(?a) { (?a, a, mmA:attribute), "
                                        "count(?d over (?d, mmA:data.attr_of, ?a) groupBy(?a)) " +
                                        text + " 1 }");
      CHECK(std::get<Count>(cs[0].clauses[0][1].node).cmp == op);
    }
    CHECK(compare(2, CmpOp::Ne, 1));
    CHECK(compare(1, CmpOp::Le, 1));
    CHECK_FALSE(compare(1, CmpOp::Gt, 1));
  }

  TEST_CASE("duplicate ids") {
    const std::string one = "constraint 7 x phase=source kind=SR tag=TR report(?d) { (?d, a, mmA:data) }\n";
    const auto e = constraint_error(one + one);
    CHECK(e.message() == "duplicate constraint id 7");
    CHECK(e.line() == 2);
    CHECK_NOTHROW(parse_constraints(one + "constraint 7b y phase=source kind=SR tag=TR report(?d) { (?d, a, mmA:data) }"));
  }

  TEST_CASE("report variables must be bound in every clause") {
    CHECK(constraint_error("constraint 2 x phase=source kind=SR tag=TR report(?d, ?z) { (?d, a, mmA:data) }")
              .message() == "report variable ?z not bound in constraint 2");
    CHECK(constraint_error("constraint 2 x phase=source kind=SR tag=TR report(?d) { (?d, a, mmA:data) } "
                           "{ (?e, a, mmA:data) }")
              .message() == "report variable ?d not bound in constraint 2");
    CHECK(constraint_error("constraint 2 x phase=source kind=SR tag=TR report(?k) { (?d, a, mmA:data), "
                           "not((?d, mmA:data.attr_of, ?k)) }")
              .message() == "report variable ?k not bound in constraint 2");
  }

  TEST_CASE("count scoping") {
    CHECK(constraint_error("constraint 5 x phase=source kind=SC tag=WF report(?d) { (?d, a, mmA:data), "
                           "count(?s over (?d, mmA:data.contained_in, ?s) groupBy(?q)) = 1 }")
              .message()
              .find("groupBy") != std::string::npos);
    CHECK(constraint_error("constraint 5 x phase=source kind=SC tag=WF report(?d) { (?d, a, mmA:data), "
                           "count(?zz over (?d, mmA:data.contained_in, ?s) groupBy(?d)) = 1 }")
              .message()
              .find("?zz") != std::string::npos);
  }

  TEST_CASE("header errors") {
    CHECK_THROWS_AS(parse_constraints("constraint 1 x phase=sideways kind=SR tag=TR report(?d) { (?d, a, mmA:data) }"),
                    ParseError);
    CHECK_THROWS_AS(parse_constraints("constraint 1 x phase=source kind=XX tag=TR report(?d) { (?d, a, mmA:data) }"),
                    ParseError);
    CHECK_THROWS_AS(parse_constraints("constraint x phase=source kind=SR tag=TR report(?d) { (?d, a, mmA:data) }"),
                    ParseError);
    CHECK_THROWS_AS(parse_constraints("rule 1"), ParseError);
  }
}

TEST_SUITE("static analysis") {
  TEST_CASE("bound variables skip nested scopes") {
    const auto cs = parse_constraints(
        "constraint 10 q phase=source kind=SR tag=WF report(?q) { (?q, mmA:qualifier.name, ?n), "
        "not((?a, mmA:attribute.name, ?n)) }");
    CHECK(bound_variables(cs[0].clauses[0]) == std::vector<std::string>{"?n", "?q"});
  }

  TEST_CASE("hand-built body with an unbound builtin input") {
    const Body body{BodyAtom{Neq{Var("?x"), Var("?y")}}};
    CHECK_THROWS_WITH_AS(bound_variables(body), "unbound builtin argument ?x at atom 1", EvalError);
  }

  TEST_CASE("vocabulary collection reaches nested atoms") {
    const auto cs = parse_constraints(read_text_file(kAssets + "/requirements.mtc"));
    std::vector<Iri> preds;
    std::vector<Iri> classes;
    for (const auto& c : cs) {
      for (const auto& clause : c.clauses) collect_vocabulary(clause, preds, classes);
    }
    CHECK(std::find(preds.begin(), preds.end(), fixtures::a("attribute.key")) != preds.end());
    CHECK(std::find(classes.begin(), classes.end(), fixtures::b("foreign")) != classes.end());
  }
}

TEST_SUITE("printing and fuzzing") {
  TEST_CASE("shipped assets print and reparse to the same AST") {
    const auto rules = parse_rules(read_text_file(kAssets + "/er2rm.mtr"));
    CHECK(parse_rules(print_rules(rules)) == rules);
    CHECK(print_rules(parse_rules(print_rules(rules))) == print_rules(rules));
    for (const char* f : {"/requirements.mtc", "/requirements_variants.mtc"}) {
      const auto cs = parse_constraints(read_text_file(kAssets + f));
      CHECK(parse_constraints(print_constraints(cs)) == cs);
    }
  }

  TEST_CASE("random programs print and reparse to the same AST") {
    const auto u = gen::Universe::small();
    gen::Rng rng(31);
    for (int i = 0; i < 300; ++i) {
      const Rule r = gen::random_rule(rng, u);
      const std::string text = print_rule(r);
      std::vector<Rule> back;
      REQUIRE_NOTHROW(back = parse_rules(text));
      REQUIRE(back.size() == 1);
      CHECK(back[0] == r);

      const Constraint c = gen::random_constraint(rng, u, i + 1, Phase::Source, gen::BodyShape{3, true});
      const std::string ctext = print_constraint(c);
      std::vector<Constraint> cback;
      REQUIRE_NOTHROW(cback = parse_constraints(ctext));
      REQUIRE(cback.size() == 1);
      CHECK(cback[0] == c);
    }
  }

  TEST_CASE("truncated programs fail with a position") {
    const auto u = gen::Universe::small();
    gen::Rng rng(32);
    for (int i = 0; i < 150; ++i) {
      const std::string rule_text = print_rule(gen::random_rule(rng, u));
      const std::string cons_text =
          print_constraint(gen::random_constraint(rng, u, 1, Phase::Target, gen::BodyShape{3, true}));
      for (const auto* text : {&rule_text, &cons_text}) {
        std::string trimmed = *text;
        while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == ' ')) trimmed.pop_back();
        const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, trimmed.size() - 1)(rng);
        const std::string part = trimmed.substr(0, cut);
        try {
          if (text == &rule_text) {
            (void)parse_rules(part);
          } else {
            (void)parse_constraints(part);
          }
          FAIL("truncated text parsed: " << part);
        } catch (const ParseError& e) {
          CHECK(e.line() >= 1);
          CHECK(e.column() >= 1);
        }
      }
    }
  }

  TEST_CASE("corrupted shipped programs raise parse errors only") {
    const std::string rules = read_text_file(kAssets + "/er2rm.mtr");
    const std::string cons = read_text_file(kAssets + "/requirements.mtc");
    const std::string alphabet = "()[]{},.?_:\"#<>^ab0=!\n";
    gen::Rng rng(33);
    for (int i = 0; i < 300; ++i) {
      const bool on_rules = i % 2 == 0;
      std::string s = on_rules ? rules : cons;
      for (int k = 0; k < 2; ++k) {
        const std::size_t at = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
        s[at] = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
      }
      try {
        if (on_rules) {
          (void)parse_rules(s);
        } else {
          (void)parse_constraints(s);
        }
      } catch (const ParseError& e) {
        CHECK(e.line() >= 1);
      } catch (const std::exception& e) {
        FAIL("unexpected exception: " << e.what());
      }
    }
  }
}
