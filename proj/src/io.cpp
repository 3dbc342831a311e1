#include "algrowth/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace algrowth::io {

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + ": expected a string");
  return j.get<std::string>();
}

long long as_integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ValidationError(where + ": expected an integer");
  return j.get<long long>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected a list");
  return j;
}

/// Exact rationals are strings; plain integers are accepted too.
Rational as_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw ValidationError(where + ": expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

std::string idx(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

TermSpec term_from_json(const Json& j, const std::string& where) {
  TermSpec t;
  t.coeff = as_rational(field(j, "coeff", where), where + ".coeff");
  if (auto it = j.find("word"); it != j.end()) {
    const Json& w = as_array(*it, where + ".word");
    for (std::size_t i = 0; i < w.size(); ++i) t.word.push_back(as_string(w[i], idx(where + ".word", i)));
  }
  if (auto it = j.find("object"); it != j.end()) t.object = as_string(*it, where + ".object");
  return t;
}

Json term_to_json(const TermSpec& t) {
  Json j;
  j["coeff"] = to_string(t.coeff);
  j["word"] = t.word;
  if (t.object) j["object"] = *t.object;
  return j;
}

MorphismExpr expr_from_json(const Json& j, const std::string& where) {
  MorphismExpr e;
  const Json& terms = as_array(j, where);
  for (std::size_t i = 0; i < terms.size(); ++i) e.push_back(term_from_json(terms[i], idx(where, i)));
  return e;
}

int object_of(const std::map<std::string, int>& objects, const std::string& name, const std::string& where) {
  auto it = objects.find(name);
  if (it == objects.end()) throw ValidationError(where + ": unknown object \"" + name + "\"");
  return it->second;
}

Vec vector_from_json(const AInfCategory& c, const Json& j, const std::string& where) {
  SparseAccumulator<Rational> acc;
  const Json& terms = as_array(j, where);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string w = idx(where, i);
    const std::string id = as_string(field(terms[i], "id", w), w + ".id");
    const auto b = c.find_label(id);
    if (!b) throw ValidationError(w + ": unknown basis id \"" + id + "\"");
    acc.add(*b, as_rational(field(terms[i], "coeff", w), w + ".coeff"));
  }
  return acc.finish();
}

Json vector_to_json(const AInfOps& c, const Vec& v) {
  Json out = Json::array();
  for (const auto& [b, x] : v.entries()) out.push_back(Json{{"coeff", to_string(x)}, {"id", c.basis(b).label}});
  return out;
}

std::string block_key(const AInfOps& c, int s, int t) { return c.object_name(s) + "->" + c.object_name(t); }

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string what = e.what();
    // Drop the library's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix.
    if (auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

Presentation presentation_from_json(const Json& j) {
  Presentation p;
  if (auto it = j.find("grading_modulus"); it != j.end()) p.grading_modulus = as_integer(*it, "grading_modulus");
  if (auto it = j.find("inhomogeneous"); it != j.end()) {
    if (!it->is_boolean()) throw ValidationError("inhomogeneous: expected true or false");
    p.inhomogeneous = it->get<bool>();
  }
  const Json& objects = as_array(field(j, "objects", "presentation"), "objects");
  for (std::size_t i = 0; i < objects.size(); ++i) p.objects.push_back(as_string(objects[i], idx("objects", i)));
  const Json& gens = as_array(field(j, "generators", "presentation"), "generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string w = idx("generators", i);
    GeneratorSpec g;
    g.name = as_string(field(gens[i], "name", w), w + ".name");
    g.src = as_string(field(gens[i], "src", w), w + ".src");
    g.tgt = as_string(field(gens[i], "tgt", w), w + ".tgt");
    if (auto it = gens[i].find("degree"); it != gens[i].end()) g.degree = as_integer(*it, w + ".degree");
    p.generators.push_back(std::move(g));
  }
  if (auto it = j.find("relations"); it != j.end()) {
    const Json& rels = as_array(*it, "relations");
    for (std::size_t i = 0; i < rels.size(); ++i) p.relations.push_back(expr_from_json(rels[i], idx("relations", i)));
  }
  return p;
}

Json presentation_to_json(const Presentation& p) {
  Json j;
  j["grading_modulus"] = p.grading_modulus;
  if (p.inhomogeneous) j["inhomogeneous"] = true;
  j["objects"] = p.objects;
  j["generators"] = Json::array();
  for (const auto& g : p.generators)
    j["generators"].push_back(Json{{"name", g.name}, {"src", g.src}, {"tgt", g.tgt}, {"degree", g.degree}});
  j["relations"] = Json::array();
  for (const auto& r : p.relations) {
    Json rel = Json::array();
    for (const auto& t : r) rel.push_back(term_to_json(t));
    j["relations"].push_back(std::move(rel));
  }
  return j;
}

SigmaSpec sigma_from_json(const Json& j) {
  const Json& list = j.is_object() ? field(j, "sigma", "sigma file") : j;
  SigmaSpec s;
  const Json& exprs = as_array(list, "sigma");
  for (std::size_t i = 0; i < exprs.size(); ++i) s.push_back(expr_from_json(exprs[i], idx("sigma", i)));
  return s;
}

AInfDocument ainf_from_json(const Json& j) {
  long long modulus = 0;
  if (auto it = j.find("grading_modulus"); it != j.end()) modulus = as_integer(*it, "grading_modulus");
  std::vector<std::string> names;
  std::map<std::string, int> objects;
  const Json& obj = as_array(field(j, "objects", "A-infinity file"), "objects");
  for (std::size_t i = 0; i < obj.size(); ++i) {
    names.push_back(as_string(obj[i], idx("objects", i)));
    if (!objects.emplace(names.back(), static_cast<int>(i)).second)
      throw ValidationError(idx("objects", i) + ": duplicate object \"" + names.back() + "\"");
  }

  const Json& mu = as_array(field(j, "mu", "A-infinity file"), "mu");
  int k_max = 2;
  for (std::size_t i = 0; i < mu.size(); ++i)
    k_max = std::max<int>(k_max, static_cast<int>(as_integer(field(mu[i], "arity", idx("mu", i)), idx("mu", i) + ".arity")));
  if (auto it = j.find("max_arity"); it != j.end()) {
    const long long declared = as_integer(*it, "max_arity");
    if (declared < k_max) throw ValidationError("max_arity: smaller than the arity of a listed operation");
    k_max = static_cast<int>(declared);
  }

  AInfDocument doc;
  doc.category = std::make_shared<AInfCategory>(names, modulus, k_max);
  AInfCategory& c = *doc.category;

  const Json& basis = field(j, "basis", "A-infinity file");
  if (!basis.is_object()) throw ValidationError("basis: expected an object keyed by \"SRC->TGT\"");
  std::vector<std::optional<Rational>> levels;
  for (const auto& [key, entries] : basis.items()) {
    const std::string where = "basis[\"" + key + "\"]";
    const auto arrow = key.find("->");
    if (arrow == std::string::npos) throw ValidationError(where + ": key must look like \"SRC->TGT\"");
    const int s = object_of(objects, key.substr(0, arrow), where), t = object_of(objects, key.substr(arrow + 2), where);
    const Json& list = as_array(entries, where);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string w = idx(where, i);
      const std::string id = as_string(field(list[i], "id", w), w + ".id");
      const long long degree = as_integer(field(list[i], "degree", w), w + ".degree");
      try {
        c.add_basis(s, t, degree, id);
      } catch (const ValidationError& e) {
        throw ValidationError(w + ": " + e.what());
      }
      if (auto it = list[i].find("level"); it != list[i].end()) {
        if (it->is_array() || it->is_object())
          throw ValidationError(w + ".level: only adapted-basis filtrations (one level per basis vector) are supported");
        levels.emplace_back(as_rational(*it, w + ".level"));
      } else {
        levels.emplace_back();
      }
    }
  }
  if (j.contains("filtration"))
    throw ValidationError("filtration: arbitrary subspace filtrations are not supported; give a level per basis vector");

  const Json& units = field(j, "units", "A-infinity file");
  if (!units.is_object()) throw ValidationError("units: expected an object keyed by object name");
  for (const auto& [name, id] : units.items()) {
    const std::string where = "units[\"" + name + "\"]";
    const int o = object_of(objects, name, where);
    const auto b = c.find_label(as_string(id, where));
    if (!b) throw ValidationError(where + ": unknown basis id");
    try {
      c.set_unit(o, *b);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }

  for (std::size_t i = 0; i < mu.size(); ++i) {
    const std::string w = idx("mu", i);
    const long long arity = as_integer(field(mu[i], "arity", w), w + ".arity");
    const Json& in = as_array(field(mu[i], "inputs", w), w + ".inputs");
    if (static_cast<long long>(in.size()) != arity) throw ValidationError(w + ": arity does not match the input count");
    Tuple t;
    for (std::size_t k = 0; k < in.size(); ++k) {
      const std::string id = as_string(in[k], idx(w + ".inputs", k));
      const auto b = c.find_label(id);
      if (!b) throw ValidationError(idx(w + ".inputs", k) + ": unknown basis id \"" + id + "\"");
      t.push_back(*b);
    }
    try {
      c.set_mu(t, vector_from_json(c, field(mu[i], "output", w), w + ".output"));
    } catch (const ValidationError& e) {
      const std::string what = e.what();
      throw ValidationError(what.rfind(w, 0) == 0 ? what : w + ": " + what);
    }
  }
  c.finalize();

  std::size_t with_level = 0;
  for (const auto& l : levels) with_level += l.has_value();
  if (with_level == levels.size() && !levels.empty()) {
    FiltrationAssignment f;
    for (const auto& l : levels) f.levels.push_back(*l);
    doc.filtration = std::move(f);
  } else if (with_level != 0) {
    throw ValidationError("basis: levels must be given for every basis vector or for none");
  }

  if (auto it = j.find("twisted"); it != j.end()) {
    const Json& list = as_array(*it, "twisted");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string w = idx("twisted", i);
      TwistedComplex t;
      t.name = as_string(field(list[i], "name", w), w + ".name");
      const Json& sums = as_array(field(list[i], "summands", w), w + ".summands");
      for (std::size_t k = 0; k < sums.size(); ++k) {
        const std::string ws = idx(w + ".summands", k);
        ShiftedObject so;
        so.object = object_of(objects, as_string(field(sums[k], "object", ws), ws + ".object"), ws);
        if (auto sh = sums[k].find("shift"); sh != sums[k].end()) so.shift = as_integer(*sh, ws + ".shift");
        t.summands.push_back(so);
      }
      if (auto d = list[i].find("delta"); d != list[i].end()) {
        const Json& entries = as_array(*d, w + ".delta");
        for (std::size_t k = 0; k < entries.size(); ++k) {
          const std::string wd = idx(w + ".delta", k);
          const int from = static_cast<int>(as_integer(field(entries[k], "from", wd), wd + ".from"));
          const int to = static_cast<int>(as_integer(field(entries[k], "to", wd), wd + ".to"));
          if (!t.delta.emplace(std::make_pair(from, to), vector_from_json(c, field(entries[k], "value", wd), wd + ".value"))
                   .second)
            throw ValidationError(wd + ": duplicate entry");
        }
      }
      doc.twisted.push_back(std::move(t));
    }
  }

  if (auto it = j.find("sigma"); it != j.end()) {
    const Json& list = as_array(*it, "sigma");
    for (std::size_t i = 0; i < list.size(); ++i) doc.sigma.push_back(vector_from_json(c, list[i], idx("sigma", i)));
  }
  if (auto it = j.find("sigma_object"); it != j.end()) {
    doc.sigma_object = as_string(*it, "sigma_object");
    object_of(objects, *doc.sigma_object, "sigma_object");
  }
  if (auto it = j.find("threshold"); it != j.end()) doc.threshold = as_rational(*it, "threshold");
  return doc;
}

Json ainf_to_json(const AInfDocument& doc) {
  const AInfCategory& c = *doc.category;
  Json j;
  j["grading_modulus"] = c.grading_modulus();
  j["objects"] = Json::array();
  for (int o = 0; o < c.object_count(); ++o) j["objects"].push_back(c.object_name(o));
  j["max_arity"] = c.max_arity();
  Json basis = Json::object();
  for (Index b = 0; b < c.basis_size(); ++b) {
    const auto& info = c.basis(b);
    Json entry{{"id", info.label}, {"degree", info.degree}};
    if (doc.filtration) entry["level"] = to_string(doc.filtration->levels.at(static_cast<std::size_t>(b)));
    basis[block_key(c, info.src, info.tgt)].push_back(std::move(entry));
  }
  j["basis"] = std::move(basis);
  Json units = Json::object();
  for (int o = 0; o < c.object_count(); ++o)
    if (auto u = c.unit_index(o)) units[c.object_name(o)] = c.basis(*u).label;
  j["units"] = std::move(units);
  j["mu"] = Json::array();
  for (const auto& [inputs, out] : c.table()) {
    if (out.empty()) continue;
    Json in = Json::array();
    for (Index b : inputs) in.push_back(c.basis(b).label);
    j["mu"].push_back(Json{{"arity", inputs.size()}, {"inputs", std::move(in)}, {"output", vector_to_json(c, out)}});
  }
  if (!doc.twisted.empty()) {
    j["twisted"] = Json::array();
    for (const auto& t : doc.twisted) {
      Json tj{{"name", t.name}, {"summands", Json::array()}, {"delta", Json::array()}};
      for (const auto& s : t.summands) tj["summands"].push_back(Json{{"object", c.object_name(s.object)}, {"shift", s.shift}});
      for (const auto& [key, v] : t.delta)
        if (!v.empty()) tj["delta"].push_back(Json{{"from", key.first}, {"to", key.second}, {"value", vector_to_json(c, v)}});
      j["twisted"].push_back(std::move(tj));
    }
  }
  if (!doc.sigma.empty()) {
    j["sigma"] = Json::array();
    for (const auto& v : doc.sigma) j["sigma"].push_back(vector_to_json(c, v));
  }
  if (doc.sigma_object) j["sigma_object"] = *doc.sigma_object;
  if (doc.threshold) j["threshold"] = to_string(*doc.threshold);
  return j;
}

FilteredGrowthProfile profile_from_text(const std::string& text, const std::string& source) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const Json j = parse_json(text, source);
    const std::string pair = j.contains("pair") ? as_string(j["pair"], "pair") : source;
    const Json& g = as_array(field(j, "grid", source), "grid");
    const Json& v = as_array(field(j, "values", source), "values");
    if (g.size() != v.size()) throw ValidationError(source + ": grid and values differ in length");
    std::vector<Rational> grid;
    std::vector<Count> values;
    for (std::size_t i = 0; i < g.size(); ++i) {
      grid.push_back(as_rational(g[i], idx("grid", i)));
      if (!v[i].is_number_unsigned() && !(v[i].is_number_integer() && v[i].get<long long>() >= 0))
        throw ValidationError(idx("values", i) + ": expected a non-negative integer");
      values.push_back(v[i].get<Count>());
    }
    return make_profile(pair, std::move(grid), std::move(values));
  }

  std::istringstream in(text);
  std::string line;
  std::vector<Rational> grid;
  std::vector<Count> values;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(source + ":" + std::to_string(line_no) + ":1: expected two tab-separated columns");
    const std::string a = line.substr(0, tab), b = line.substr(tab + 1);
    if (!header_seen) {
      header_seen = true;
      if (a == "x" || a == "n") continue;
    }
    try {
      grid.push_back(parse_rational(a));
    } catch (const ParseError& e) {
      throw ParseError(source + ":" + std::to_string(line_no) + ":1: " + e.what());
    }
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(b, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != b.size() || b[0] == '-')
      throw ParseError(source + ":" + std::to_string(line_no) + ":" + std::to_string(tab + 2) +
                       ": expected a non-negative integer");
    values.push_back(value);
  }
  return make_profile(source, std::move(grid), std::move(values));
}

std::string growth_table_tsv(const GrowthTable& table) {
  std::ostringstream out;
  out << "n\tdim\texact\n";
  for (int n = 1; n <= table.n_max(); ++n)
    out << n << "\t" << table.at(n) << "\t" << (table.exact[static_cast<std::size_t>(n - 1)] ? "true" : "false") << "\n";
  return out.str();
}

std::string classification_line(const GrowthClassification& c) {
  char rate[64];
  std::snprintf(rate, sizeof rate, "%.6f", c.rate);
  std::ostringstream out;
  out << "# classification: " << to_string(c.verdict) << "\trate=" << rate << "\twindow=" << c.n_min << ".."
      << c.n_max;
  if (c.zero_table) out << "\tzero_table=true";
  out << "\n";
  return out.str();
}

std::string profile_tsv(const FilteredGrowthProfile& p) {
  std::ostringstream out;
  out << "x\ti\n";
  for (std::size_t k = 0; k < p.grid.size(); ++k) out << to_string(p.grid[k]) << "\t" << p.values[k] << "\n";
  char rate[64];
  if (p.rate) {
    std::snprintf(rate, sizeof rate, "%.6f", *p.rate);
    out << "# rate: " << rate << "\n";
  } else {
    out << "# rate: absent\n";
  }
  return out.str();
}

}  // namespace algrowth::io
