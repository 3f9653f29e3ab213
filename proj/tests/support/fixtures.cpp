#include "fixtures.hpp"

#include <unistd.h>

#include <filesystem>
#include <stdexcept>

namespace odmx::fixtures {

const AssetBundle& bundle() {
  static const AssetBundle b = load_case_study(ODMX_TEST_ASSET_DIR);
  return b;
}

const Graph& case_target() {
  static const Graph g = apply_rules(bundle().source, bundle().rules).target;
  return g;
}

void set_object(Graph& g, const Iri& s, const Iri& p, const Term& o) {
  std::vector<Triple> old;
  for (const auto& t : g) {
    if (t.subject == s && t.predicate == p) old.push_back(t);
  }
  if (old.size() != 1) throw std::logic_error("set_object: expected one triple for " + s.nt() + " " + p.nt());
  g.erase(old.front());
  g.insert(Triple{s, p, o});
}

namespace {

Term str(const char* s) { return Term(Literal::string(s)); }

void remove(Graph& g, const Triple& t) {
  if (!g.erase(t)) throw std::logic_error("mutation target missing: " + to_ntriples(t));
}

}  // namespace

const std::vector<Mutation>& mutations() {
  static const std::vector<Mutation> all{
      {"duplicate attribute name", "1", false,
       [](Graph& g) { set_object(g, a("05_age_attribute"), a("attribute.name"), str("name")); },
       {"1", "17"}},
      {"second key on a data", "2", false,
       [](Graph& g) { set_object(g, a("04_name_attribute"), a("attribute.key"), Term(Literal::boolean(true))); },
       {"2", "28"}},
      {"key removed", "3", false,
       [](Graph& g) {
         remove(g, Triple{a("03_id_student_attribute"), a("attribute.key"), Term(Literal::boolean(true))});
       },
       {"3", "10", "20", "28", "33"}},
      {"data sharing a store", "7", false,
       [](Graph& g) { set_object(g, a("09_Course_data"), a("data.contained_in"), Term(a("01_DB_Students_store"))); },
       {"7", "16"}},
      {"qualifier not a key", "10", false,
       [](Graph& g) { set_object(g, a("15_id_course_qualifier"), a("qualifier.name"), str("title")); },
       {"10", "20", "33"}},
      {"relation with one role", "11", false,
       [](Graph& g) { remove(g, Triple{a("11_registration_relation"), a("relation.is_role"), a("12_is_registered_role")}); },
       {"11"}},
      {"foreign with no matching key", "20", true,
       [](Graph& g) {
         set_object(g, a("12_is_registered_role09_Course_data14_id_student_qualifierforeign2"), b("foreign.name"),
                    str("registerCourseid_teacher"));
       },
       {"20", "33"}},
      {"row mixing cols and foreigns", "29", true,
       [](Graph& g) {
         g.insert(Triple{a("13_register_role09_Course_datarow2"), b("row.is_col"), a("04_name_attributecol1")});
       },
       {"24", "29"}},
  };
  return all;
}

Models mutated(const Mutation& m) {
  Models out{bundle().source, case_target()};
  if (m.on_target) {
    m.apply(out.target);
  } else {
    m.apply(out.source);
    out.target = apply_rules(out.source, bundle().rules).target;
  }
  return out;
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("odmx_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace odmx::fixtures
