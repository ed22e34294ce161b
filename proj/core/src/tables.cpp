#include "quadinv/tables.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace quadinv {

namespace {

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

std::string matrix_text(const RatMatrix& m) {
  std::string s;
  for (int i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (int j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m(i, j).get_str();
  }
  return s;
}

std::string witness_text(const DEntry& e) {
  if (!e.witness) return "";
  return "M=[" + matrix_text(e.witness->m) + "] N=[" + matrix_text(e.witness->n) + "]";
}

}  // namespace

std::string to_csv(const DTable& t) {
  std::ostringstream os;
  os << "dp,np,value,status,certified_lower,witness\n";
  for (const auto& [key, e] : t.entries)
    os << key.first << "," << key.second << "," << e.decision.value << "," << to_string(e.decision.status) << ","
       << e.decision.certified_lower << ",\"" << witness_text(e) << "\"\n";
  return os.str();
}

std::string to_csv(const XTable& t) {
  std::ostringstream os;
  os << "k,m,value,status,witness\n";
  for (const auto& [m, e] : t.entries) {
    std::string w;
    if (e.witness_eta) w = "family=" + std::to_string(e.witness_family) + " eta=" + join(*e.witness_eta);
    os << t.k << "," << m << "," << e.value << "," << to_string(e.confidence) << ",\"" << w << "\"\n";
  }
  return os.str();
}

std::string to_json(const DTable& t) {
  nlohmann::ordered_json j;
  j["tuple"] = serialize_tuple(t.tuple);
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [key, e] : t.entries) {
    nlohmann::ordered_json r;
    r["dp"] = key.first;
    r["np"] = key.second;
    r["value"] = e.decision.value;
    r["status"] = to_string(e.decision.status);
    r["certified_lower"] = e.decision.certified_lower;
    if (e.witness) {
      r["witness"]["m"] = matrix_text(e.witness->m);
      r["witness"]["n"] = matrix_text(e.witness->n);
    }
    j["entries"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::string to_json(const XTable& t) {
  nlohmann::ordered_json j;
  j["tuple"] = serialize_tuple(t.tuple);
  j["k"] = t.k;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [m, e] : t.entries) {
    nlohmann::ordered_json r;
    r["m"] = m;
    r["value"] = e.value;
    r["confidence"] = to_string(e.confidence);
    if (e.bad_dim_above) r["bad_dim_above"] = *e.bad_dim_above;
    if (e.witness_eta) {
      r["witness"]["family"] = e.witness_family;
      r["witness"]["eta"] = join(*e.witness_eta);
    }
    j["entries"].push_back(r);
  }
  return j.dump(2) + "\n";
}

bool any_inconclusive(const DTable& t) {
  for (const auto& [key, e] : t.entries)
    if (e.decision.status == RankStatus::Inconclusive) return true;
  return false;
}

bool any_inconclusive(const XTable& t) {
  for (const auto& [m, e] : t.entries)
    if (e.confidence == Confidence::Inconclusive) return true;
  return false;
}

}  // namespace quadinv
