#include "io.hpp"

#include <openssl/sha.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace efalloc::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) fail("expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

const json& array_of(const json& v, const std::string& what) {
  if (!v.is_array()) fail(what + " must be an array");
  return v;
}

std::string string_of(const json& v, const std::string& what) {
  if (!v.is_string()) fail(what + " must be a string");
  return v.get<std::string>();
}

std::uint64_t count_of(const json& v, const std::string& what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    fail(what + " must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

Prob weight_of(const json& v, const std::string& what) {
  if (v.is_number_unsigned()) return Prob(v.get<std::uint64_t>());
  if (v.is_number()) fail(what + ": write fractional weights as strings such as \"1/3\" or \"0.25\"");
  try {
    return Prob::parse(string_of(v, what));
  } catch (const std::invalid_argument& e) {
    fail(what + ": " + e.what());
  } catch (const std::domain_error& e) {
    fail(what + ": " + e.what());
  }
}

class HouseIndex {
 public:
  explicit HouseIndex(const std::vector<std::string>& names) {
    for (HouseId h = 0; h < names.size(); ++h)
      if (!index_.emplace(names[h], h).second) fail("duplicate house name \"" + names[h] + "\"");
  }

  HouseId operator()(const json& v, const std::string& what) const {
    const auto name = string_of(v, what);
    auto it = index_.find(name);
    if (it == index_.end()) fail(what + ": unknown house \"" + name + "\"");
    return it->second;
  }

  std::vector<HouseId> list(const json& v, const std::string& what) const {
    std::vector<HouseId> out;
    for (const auto& x : array_of(v, what)) out.push_back((*this)(x, what));
    return out;
  }

  // Splits "a>b" at the unique '>' that leaves two known names.
  std::pair<HouseId, HouseId> pair(const std::string& key) const {
    std::optional<std::pair<HouseId, HouseId>> found;
    for (std::size_t pos = key.find('>'); pos != std::string::npos; pos = key.find('>', pos + 1)) {
      auto a = index_.find(key.substr(0, pos));
      auto b = index_.find(key.substr(pos + 1));
      if (a == index_.end() || b == index_.end()) continue;
      if (found) fail("ambiguous pair key \"" + key + "\"");
      found.emplace(a->second, b->second);
    }
    if (!found) fail("pair key \"" + key + "\" is not of the form \"house>house\"");
    return *found;
  }

 private:
  std::map<std::string, HouseId> index_;
};

LinearOrder order_of(const HouseIndex& idx, const json& v, const std::string& what) {
  try {
    return LinearOrder(idx.list(v, what));
  } catch (const Error& e) {
    fail(what + ": " + e.what());
  }
}

json names_of(const Instance& inst, const std::vector<HouseId>& hs) {
  json out = json::array();
  for (HouseId h : hs) out.push_back(inst.house_name(h));
  return out;
}

}  // namespace

Instance instance_from_json(const json& doc) {
  const Model model = parse_model(string_of(field(doc, "model"), "model"));
  RawInstance raw;
  raw.num_agents = count_of(field(doc, "agents"), "agents");
  for (const auto& h : array_of(field(doc, "houses"), "houses")) raw.house_names.push_back(string_of(h, "house name"));
  const HouseIndex idx(raw.house_names);
  const json& prefs = field(doc, "prefs");

  auto per_agent = [&](const char* model_name) -> const json& {
    array_of(prefs, "prefs");
    if (prefs.size() != raw.num_agents)
      fail(std::string(model_name) + " prefs need one entry per agent, got " + std::to_string(prefs.size()));
    return prefs;
  };

  switch (model) {
    case Model::Lottery: {
      LotteryPrefs p;
      std::size_t i = 0;
      for (const auto& agent : per_agent("lottery")) {
        const std::string where = "agent " + std::to_string(i++);
        std::vector<WeightedOrder> support;
        for (const auto& entry : array_of(agent, where))
          support.push_back({weight_of(field(entry, "weight"), where + " weight"),
                             order_of(idx, field(entry, "order"), where + " order")});
        p.agents.push_back(std::move(support));
      }
      raw.prefs = std::move(p);
      break;
    }
    case Model::Compact: {
      CompactPrefs p;
      std::size_t i = 0;
      for (const auto& agent : per_agent("compact")) {
        const std::string where = "agent " + std::to_string(i++);
        std::vector<std::vector<HouseId>> classes;
        for (const auto& cls : array_of(agent, where)) classes.push_back(idx.list(cls, where));
        try {
          p.agents.emplace_back(std::move(classes));
        } catch (const Error& e) {
          fail(where + ": " + e.what());
        }
      }
      raw.prefs = std::move(p);
      break;
    }
    case Model::Joint: {
      JointPrefs p;
      std::size_t k = 0;
      for (const auto& entry : array_of(prefs, "prefs")) {
        const std::string where = "profile " + std::to_string(k++);
        WeightedProfile prof{weight_of(field(entry, "weight"), where + " weight"), {}};
        const json& orders = array_of(field(entry, "order"), where + " order");
        if (orders.size() != raw.num_agents) fail(where + " needs one order per agent");
        for (const auto& o : orders) prof.orders.push_back(order_of(idx, o, where + " order"));
        p.profiles.push_back(std::move(prof));
      }
      raw.prefs = std::move(p);
      break;
    }
    case Model::Pairwise: {
      PairwisePrefs p;
      const std::size_t m = raw.house_names.size();
      std::size_t i = 0;
      for (const auto& agent : per_agent("pairwise")) {
        const std::string where = "agent " + std::to_string(i++);
        if (!agent.is_object()) fail(where + " must map \"a>b\" keys to probabilities");
        PairwiseMatrix pm(m);
        std::vector<bool> seen(m * m, false);
        for (const auto& [key, value] : agent.items()) {
          const auto [a, b] = idx.pair(key);
          if (a == b) fail(where + ": pair \"" + key + "\" names one house twice");
          const auto lo = std::min(a, b), hi = std::max(a, b);
          if (seen[lo * m + hi]) fail(where + ": pair \"" + key + "\" given twice");
          seen[lo * m + hi] = true;
          const Prob v = weight_of(value, where + " \"" + key + "\"");
          if (!v.is_probability())
            throw Error(ErrorKind::NonProbability, where + " \"" + key + "\" exceeds 1");
          pm.set_pair(a, b, v);
        }
        for (HouseId a = 0; a < m; ++a)
          for (HouseId b = a + 1; b < m; ++b)
            if (!seen[a * m + b])
              fail(where + ": missing pair " + raw.house_names[a] + ">" + raw.house_names[b]);
        p.agents.push_back(std::move(pm));
      }
      raw.prefs = std::move(p);
      break;
    }
  }
  return validate_instance(std::move(raw));
}

json instance_to_json(const Instance& inst) {
  json doc;
  doc["model"] = std::string(to_string(inst.model()));
  doc["agents"] = inst.num_agents();
  doc["houses"] = inst.house_names();
  json prefs = json::array();
  switch (inst.model()) {
    case Model::Lottery:
      for (const auto& support : inst.lottery().agents) {
        json agent = json::array();
        for (const auto& wo : support)
          agent.push_back({{"weight", wo.weight.str()}, {"order", names_of(inst, wo.order.ranking())}});
        prefs.push_back(std::move(agent));
      }
      break;
    case Model::Compact:
      for (const auto& wo : inst.compact().agents) {
        json agent = json::array();
        for (const auto& cls : wo.classes()) agent.push_back(names_of(inst, cls));
        prefs.push_back(std::move(agent));
      }
      break;
    case Model::Joint:
      for (const auto& prof : inst.joint().profiles) {
        json orders = json::array();
        for (const auto& o : prof.orders) orders.push_back(names_of(inst, o.ranking()));
        prefs.push_back({{"weight", prof.weight.str()}, {"order", std::move(orders)}});
      }
      break;
    case Model::Pairwise: {
      const std::size_t m = inst.num_houses();
      for (const auto& pm : inst.pairwise().agents) {
        json agent = json::object();
        for (HouseId a = 0; a < m; ++a)
          for (HouseId b = a + 1; b < m; ++b)
            agent[inst.house_name(a) + ">" + inst.house_name(b)] = pm.at(a, b).str();
        prefs.push_back(std::move(agent));
      }
      break;
    }
  }
  doc["prefs"] = std::move(prefs);
  return doc;
}

Allocation allocation_from_json(const json& doc, const Instance& inst) {
  if (!doc.is_object()) fail("allocation must map agent indices to house names");
  const HouseIndex idx(inst.house_names());
  const std::size_t n = inst.num_agents();
  std::vector<std::optional<HouseId>> slots(n);
  for (const auto& [key, value] : doc.items()) {
    std::size_t agent = 0;
    std::size_t used = 0;
    try {
      agent = std::stoul(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size()) fail("allocation key \"" + key + "\" is not an agent index");
    if (agent >= n) throw Error(ErrorKind::InvalidAllocation, "agent " + key + " out of range");
    if (slots[agent]) fail("agent " + key + " appears twice");
    slots[agent] = idx(value, "agent " + key);
  }
  Allocation w;
  for (std::size_t i = 0; i < n; ++i) {
    if (!slots[i]) throw Error(ErrorKind::InvalidAllocation, "agent " + std::to_string(i) + " has no house");
    w.assigned.push_back(*slots[i]);
  }
  check_allocation(inst, w);
  return w;
}

json allocation_to_json(const Instance& inst, const Allocation& w) {
  json out = json::object();
  for (AgentId i = 0; i < w.size(); ++i) out[std::to_string(i)] = inst.house_name(w[i]);
  return out;
}

Graph graph_from_json(const json& doc) {
  Graph g;
  g.vertices = count_of(field(doc, "vertices"), "vertices");
  for (const auto& e : array_of(field(doc, "edges"), "edges")) {
    if (!e.is_array() || e.size() != 2) fail("each edge must be a pair of vertex indices");
    g.edges.emplace_back(count_of(e[0], "edge endpoint"), count_of(e[1], "edge endpoint"));
  }
  check_graph(g);
  return g;
}

R3xcInput r3xc_from_json(const json& doc) {
  R3xcInput x;
  x.ground_size = count_of(field(doc, "ground"), "ground");
  for (const auto& s : array_of(field(doc, "subsets"), "subsets")) {
    if (!s.is_array() || s.size() != 3) fail("each subset must list three elements");
    x.subsets.push_back({static_cast<std::uint32_t>(count_of(s[0], "element")),
                         static_cast<std::uint32_t>(count_of(s[1], "element")),
                         static_cast<std::uint32_t>(count_of(s[2], "element"))});
  }
  check_r3xc(x);
  return x;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

std::string dump_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_json(path)); }

std::string digest(const Instance& inst) {
  const std::string canon = instance_to_json(inst).dump();
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(canon.data()), canon.size(), md);
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned char c : md) {
    std::snprintf(buf, sizeof buf, "%02x", c);
    hex += buf;
  }
  return hex;
}

}  // namespace efalloc::io
