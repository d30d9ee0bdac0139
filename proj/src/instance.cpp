#include "lca/instance.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lca {

namespace {

using nlohmann::json;

void collect_formula_atoms(const FormulaPtr& f, AtomSet& atoms, std::set<AgentId>& agents);

void collect_program_syms(const ProgramPtr& p, AtomSet& atoms, std::set<AgentId>& agents) {
  if (!p) return;
  if (!p->agent.name.empty()) agents.insert(p->agent);
  collect_formula_atoms(p->arg, atoms, agents);
  collect_program_syms(p->left, atoms, agents);
  collect_program_syms(p->right, atoms, agents);
}

void collect_formula_atoms(const FormulaPtr& f, AtomSet& atoms, std::set<AgentId>& agents) {
  if (!f) return;
  if (f->kind == FKind::Atom) {
    atoms.insert(f->atom);
    if (f->atom.kind != Atom::Kind::Plain) agents.insert(AgentId{f->atom.text});
  }
  if (!f->agent.name.empty()) agents.insert(f->agent);
  collect_formula_atoms(f->lhs, atoms, agents);
  collect_formula_atoms(f->rhs, atoms, agents);
  collect_program_syms(f->prog, atoms, agents);
}

FormulaPtr parse_or_fail(const std::string& text, const std::string& where) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw InstanceError(where + ": " + e.what());
  }
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InstanceError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InstanceError("instance file must be a JSON object");

  Instance inst;
  std::set<std::string> seen_agents;
  for (const auto& a : doc.value("agents", json::array())) {
    if (!a.is_string()) throw InstanceError("agents must be strings");
    std::string name = a.get<std::string>();
    if (!seen_agents.insert(name).second) throw InstanceError("duplicate agent " + name);
    inst.vocabulary.agents.push_back(AgentId{name});
  }

  std::set<Atom> tracked;
  for (const auto& a : doc.value("atoms", json::array())) {
    if (!a.is_string()) throw InstanceError("atoms must be strings");
    std::string name = a.get<std::string>();
    Atom atom;
    try {
      atom = parse_atom(name);
    } catch (const ParseError& e) {
      throw InstanceError("atom '" + name + "': " + e.what());
    }
    if (atom.kind != Atom::Kind::Plain)
      throw InstanceError("atom '" + name + "': reward/punishment atoms are tracked implicitly");
    if (!tracked.insert(atom).second) throw InstanceError("duplicate atom " + name);
    inst.vocabulary.atoms.push_back(atom);
  }
  for (const auto& agent : inst.vocabulary.agents) {
    for (Atom a : {reward_atom(agent), punish_atom(agent)}) {
      tracked.insert(a);
      inst.vocabulary.atoms.push_back(a);
    }
  }

  auto check_symbols = [&](const FormulaPtr& f, const std::string& where) {
    AtomSet atoms;
    std::set<AgentId> agents;
    collect_formula_atoms(f, atoms, agents);
    for (const auto& a : atoms)
      if (!tracked.count(a)) throw InstanceError(where + ": untracked atom " + a.str());
    for (const auto& ag : agents)
      if (!seen_agents.count(ag.name)) throw InstanceError(where + ": undeclared agent " + ag.name);
  };

  for (const auto& agent : inst.vocabulary.agents) inst.vocabulary.gammas[agent] = {};
  if (doc.contains("gamma")) {
    if (!doc["gamma"].is_object()) throw InstanceError("gamma must map agents to formula lists");
    for (const auto& [name, list] : doc["gamma"].items()) {
      if (!seen_agents.count(name)) throw InstanceError("gamma for undeclared agent " + name);
      for (const auto& entry : list) {
        std::string where = "gamma[" + name + "]";
        FormulaPtr f = parse_or_fail(entry.get<std::string>(), where);
        if (!is_l0(f)) throw InstanceError(where + ": vocabulary members must be in L0");
        check_symbols(f, where);
        inst.vocabulary.gammas[AgentId{name}].push_back(std::move(f));
      }
    }
  }

  ClosedVocabulary closed = close_vocabulary(inst.vocabulary);
  if (doc.contains("base")) {
    if (!doc["base"].is_object()) throw InstanceError("base must map agents to formula lists");
    for (const auto& [name, list] : doc["base"].items()) {
      if (!seen_agents.count(name)) throw InstanceError("base for undeclared agent " + name);
      const auto& plus = closed.gamma_plus.at(AgentId{name});
      for (const auto& entry : list) {
        std::string where = "base[" + name + "]";
        FormulaPtr f = parse_or_fail(entry.get<std::string>(), where);
        bool found = false;
        for (const auto& g : plus)
          if (formula_equal(f, g)) {
            found = true;
            break;
          }
        if (!found)
          throw InstanceError(where + ": member " + print_formula(f) +
                              " is outside the closed vocabulary");
        inst.initial.bases[AgentId{name}].insert(std::move(f));
      }
    }
  }
  for (const auto& agent : inst.vocabulary.agents)
    if (!inst.initial.bases.count(agent)) inst.initial.bases[agent] = {};

  for (const auto& entry : doc.value("valuation", json::array())) {
    std::string name = entry.get<std::string>();
    Atom atom;
    try {
      atom = parse_atom(name);
    } catch (const ParseError& e) {
      throw InstanceError("valuation entry '" + name + "': " + e.what());
    }
    if (!tracked.count(atom))
      throw InstanceError("valuation entry '" + name + "' is not a tracked atom");
    inst.initial.valuation.insert(atom);
  }

  if (doc.contains("query")) {
    inst.query = parse_or_fail(doc["query"].get<std::string>(), "query");
    check_symbols(inst.query, "query");
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["agents"] = json::array();
  for (const auto& a : inst.vocabulary.agents) doc["agents"].push_back(a.name);
  doc["atoms"] = json::array();
  for (const auto& a : inst.vocabulary.atoms)
    if (a.kind == Atom::Kind::Plain) doc["atoms"].push_back(a.text);
  doc["gamma"] = json::object();
  for (const auto& a : inst.vocabulary.agents) {
    json list = json::array();
    auto it = inst.vocabulary.gammas.find(a);
    if (it != inst.vocabulary.gammas.end())
      for (const auto& f : it->second) list.push_back(print_formula(f));
    doc["gamma"][a.name] = std::move(list);
  }
  doc["base"] = json::object();
  for (const auto& [agent, base] : inst.initial.bases) {
    json list = json::array();
    for (const auto& f : base) list.push_back(print_formula(f));
    doc["base"][agent.name] = std::move(list);
  }
  doc["valuation"] = json::array();
  for (const auto& a : inst.initial.valuation) doc["valuation"].push_back(a.str());
  if (inst.query) doc["query"] = print_formula(inst.query);
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write " + path);
  out << instance_to_json(inst);
}

}  // namespace lca
