#include "isat/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace isat {

namespace {

using nlohmann::json;

json ising_to_obj(const IsingModel& model) {
  json obj;
  obj["n"] = model.size();
  obj["h"] = model.fields();
  json couplings = json::array();
  for (const auto& c : model.couplings()) {
    couplings.push_back(json::array({c.i, c.j, c.w}));
  }
  obj["J"] = std::move(couplings);
  obj["offset"] = model.offset();
  return obj;
}

IsingModel ising_from_obj(const json& obj) {
  const int n = obj.at("n").get<int>();
  auto h = obj.at("h").get<std::vector<double>>();
  std::vector<Coupling> couplings;
  for (const auto& entry : obj.at("J")) {
    couplings.push_back({entry.at(0).get<int>(), entry.at(1).get<int>(),
                         entry.at(2).get<double>()});
  }
  return IsingModel(n, std::move(h), couplings,
                    obj.value("offset", 0.0));
}

json role_to_obj(const SpinRole& role) {
  json obj;
  obj["kind"] = role_kind_name(role.kind);
  if (role.var >= 1) obj["var"] = role.var;
  if (role.clause >= 0) obj["clause"] = role.clause;
  if (role.kind == SpinRole::Kind::Literal ||
      role.kind == SpinRole::Kind::Dual) {
    obj["negated"] = role.negated;
  }
  if (role.bit >= 0) obj["bit"] = role.bit;
  return obj;
}

SpinRole role_from_obj(const json& obj) {
  SpinRole role;
  role.kind = role_kind_from_name(obj.at("kind").get<std::string>());
  role.var = obj.value("var", 0);
  role.clause = obj.value("clause", -1);
  role.negated = obj.value("negated", false);
  role.bit = obj.value("bit", -1);
  return role;
}

json cnf_to_obj(const CnfInstance& instance) {
  json obj;
  obj["num_vars"] = instance.num_vars;
  json clauses = json::array();
  for (const auto& clause : instance.clauses) {
    json lits = json::array();
    for (const auto& l : clause.literals) {
      lits.push_back(l.negated ? -l.var : l.var);
    }
    clauses.push_back(std::move(lits));
  }
  obj["clauses"] = std::move(clauses);
  return obj;
}

CnfInstance cnf_from_obj(const json& obj) {
  std::ostringstream dimacs;
  const auto& clauses = obj.at("clauses");
  dimacs << "p cnf " << obj.at("num_vars").get<int>() << ' ' << clauses.size()
         << '\n';
  for (const auto& lits : clauses) {
    for (const auto& l : lits) dimacs << l.get<int>() << ' ';
    dimacs << "0\n";
  }
  return parse_dimacs(dimacs.str());
}

std::string dump(const json& obj, int indent) {
  return indent >= 0 ? obj.dump(indent) + "\n" : obj.dump();
}

}  // namespace

std::string ising_to_json(const IsingModel& model, int indent) {
  return dump(ising_to_obj(model), indent);
}

IsingModel ising_from_json(const std::string& text) {
  return ising_from_obj(json::parse(text));
}

std::string formulation_to_json(const FormulationModel& model, int indent) {
  json obj = ising_to_obj(model.ising);
  obj["formulation"] = formulation_name(model.id);
  json roles = json::array();
  for (const auto& role : model.roles) roles.push_back(role_to_obj(role));
  obj["roles"] = std::move(roles);
  obj["cnf"] = cnf_to_obj(model.source);
  return dump(obj, indent);
}

FormulationModel formulation_from_json(const std::string& text) {
  const json obj = json::parse(text);
  FormulationModel model;
  model.id = formulation_from_name(obj.at("formulation").get<std::string>());
  model.ising = ising_from_obj(obj);
  for (const auto& role : obj.at("roles")) {
    model.roles.push_back(role_from_obj(role));
  }
  if (static_cast<int>(model.roles.size()) != model.ising.size()) {
    throw std::invalid_argument("role table length does not match model size");
  }
  model.source = cnf_from_obj(obj.at("cnf"));
  model.rebuild_lookups();
  return model;
}

std::string quantized_to_json(const QuantizedModel& qm, int indent) {
  json obj = ising_to_obj(qm.model);
  obj["scale"] = qm.scale;
  obj["h_max"] = qm.h_max;
  obj["clamp_count"] = qm.clamp_count;
  obj["zeroed_count"] = qm.zeroed_count;
  json removed = json::array();
  for (const auto& f : qm.removed) {
    removed.push_back(json::array({f.spin, static_cast<int>(f.value)}));
  }
  obj["removed"] = std::move(removed);
  obj["kept"] = qm.kept;
  return dump(obj, indent);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace isat
