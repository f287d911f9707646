#include "groupalg/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace groupalg {

using nlohmann::json;

namespace {

// Parses `text`, rejecting duplicate keys, and converts byte offsets of
// syntax errors into line and column.
json parse_json(std::string_view text) {
  std::vector<std::set<std::string>> keys;
  json::parser_callback_t cb = [&keys](int, json::parse_event_t event, json& parsed) {
    switch (event) {
    case json::parse_event_t::object_start:
      keys.emplace_back();
      break;
    case json::parse_event_t::object_end:
      keys.pop_back();
      break;
    case json::parse_event_t::key: {
      auto k = parsed.get<std::string>();
      if (!keys.back().insert(k).second) throw ParseError("duplicate key \"" + k + "\"");
      break;
    }
    default:
      break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), cb);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    // Drop the library's "[json.exception.parse_error.101] " prefix.
    if (auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    if (msg.rfind("parse error", 0) == 0)
      if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    throw ParseError(msg, line, col);
  }
}

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where, std::string("missing member \"") + key + "\"");
  return *it;
}

void require(bool cond, const std::string& where, const std::string& what) {
  if (!cond) schema(where, what);
}

std::string as_string(const json& j, const std::string& where) {
  require(j.is_string(), where, "expected a string");
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& where) {
  require(j.is_number(), where, "expected a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const std::string& where) {
  require(j.is_array() && j.size() == 2, where, "expected [re, im]");
  return {as_number(j[0], where + "[0]"), as_number(j[1], where + "[1]")};
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  require(j.is_array(), where, "expected a list");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_string(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

void only_members(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) schema(where, "unknown member \"" + it.key() + "\"");
  }
}

// Writers emit 17 significant digits so values read back identically.
std::string num(double v) { return format_number(v); }

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string complex_text(Complex c) { return "[" + num(c.real()) + ", " + num(c.imag()) + "]"; }

FiniteGroupoid parse_arrow_tables(const json& doc, const std::vector<std::string>& objects) {
  GroupoidTables t;
  t.objects = objects;
  std::map<std::string, ObjectId> obj;
  for (std::size_t k = 0; k < objects.size(); ++k) obj[objects[k]] = object_id(k);
  auto find_obj = [&](const std::string& label) {
    auto it = obj.find(label);
    if (it == obj.end()) throw UnknownLabel(label);
    return it->second;
  };

  const json& arrows = member(doc, "arrows", "document");
  require(arrows.is_array(), "arrows", "expected a list");
  std::map<std::string, ArrowId> arr;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    std::string where = "arrows[" + std::to_string(k) + "]";
    const json& a = arrows[k];
    require(a.is_object(), where, "expected an object");
    only_members(a, {"id", "src", "tgt"}, where);
    std::string id = as_string(member(a, "id", where), where + ".id");
    if (!arr.emplace(id, arrow_id(k)).second) schema(where, "duplicate arrow id \"" + id + "\"");
    t.arrow_labels.push_back(id);
    t.src.push_back(find_obj(as_string(member(a, "src", where), where + ".src")));
    t.tgt.push_back(find_obj(as_string(member(a, "tgt", where), where + ".tgt")));
  }
  auto find_arr = [&](const json& j, const std::string& where) {
    std::string label = as_string(j, where);
    auto it = arr.find(label);
    if (it == arr.end()) throw UnknownLabel(label);
    return it->second;
  };

  const json& compose = member(doc, "compose", "document");
  require(compose.is_array(), "compose", "expected a list");
  for (std::size_t k = 0; k < compose.size(); ++k) {
    std::string where = "compose[" + std::to_string(k) + "]";
    require(compose[k].is_array() && compose[k].size() == 3, where, "expected [first, second, result]");
    t.compose.push_back({find_arr(compose[k][0], where), find_arr(compose[k][1], where),
                         find_arr(compose[k][2], where)});
  }

  t.inverse.assign(t.arrow_labels.size(), std::nullopt);
  const json& inverse = member(doc, "inverse", "document");
  require(inverse.is_array(), "inverse", "expected a list");
  for (std::size_t k = 0; k < inverse.size(); ++k) {
    std::string where = "inverse[" + std::to_string(k) + "]";
    require(inverse[k].is_array() && inverse[k].size() == 2, where, "expected [arrow, inverse]");
    ArrowId a = find_arr(inverse[k][0], where);
    if (t.inverse[idx(a)]) schema(where, "inverse of \"" + t.arrow_labels[idx(a)] + "\" given twice");
    t.inverse[idx(a)] = find_arr(inverse[k][1], where);
  }

  if (auto it = doc.find("units"); it != doc.end()) {
    require(it->is_object(), "units", "expected a map object -> arrow");
    t.units.assign(objects.size(), std::nullopt);
    for (auto u = it->begin(); u != it->end(); ++u)
      t.units[idx(find_obj(u.key()))] = find_arr(u.value(), "units." + u.key());
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

} // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GroupoidDocument parse_groupoid(std::string_view text) {
  json doc = parse_json(text);
  require(doc.is_object(), "document", "expected an object");
  only_members(doc, {"objects", "relation", "closure", "arrows", "compose", "inverse", "units", "haar", "nu"},
               "document");
  std::vector<std::string> objects = string_list(member(doc, "objects", "document"), "objects");

  bool has_relation = doc.contains("relation"), has_arrows = doc.contains("arrows");
  require(has_relation != has_arrows, "document", "exactly one of \"relation\" and \"arrows\" is required");

  GroupoidDocument out;
  if (has_relation) {
    for (const char* k : {"compose", "inverse", "units"})
      require(!doc.contains(k), "document", std::string("\"") + k + "\" needs \"arrows\"");
    const json& rel = doc["relation"];
    require(rel.is_array(), "relation", "expected a list of pairs");
    std::vector<LabelPair> pairs;
    for (std::size_t k = 0; k < rel.size(); ++k) {
      std::string where = "relation[" + std::to_string(k) + "]";
      require(rel[k].is_array() && rel[k].size() == 2, where, "expected [target, source]");
      pairs.emplace_back(as_string(rel[k][0], where), as_string(rel[k][1], where));
    }
    ClosurePolicy policy = ClosurePolicy::strict;
    if (auto it = doc.find("closure"); it != doc.end()) {
      std::string c = as_string(*it, "closure");
      if (c == "complete")
        policy = ClosurePolicy::complete;
      else if (c != "strict")
        schema("closure", "expected \"strict\" or \"complete\"");
    }
    out.groupoid = build_from_relation(objects, pairs, policy);
  } else {
    require(!doc.contains("closure"), "document", "\"closure\" needs \"relation\"");
    out.groupoid = parse_arrow_tables(doc, objects);
  }
  const FiniteGroupoid& g = out.groupoid;

  if (auto it = doc.find("haar"); it != doc.end()) {
    require(it->is_object(), "haar", "expected an object");
    only_members(*it, {"type", "weights"}, "haar");
    bool has_type = it->contains("type"), has_weights = it->contains("weights");
    require(has_type != has_weights, "haar", "expected {\"type\":\"counting\"} or {\"weights\":{...}}");
    if (has_type) {
      require(as_string((*it)["type"], "haar.type") == "counting", "haar.type", "only \"counting\" is known");
    } else {
      const json& w = (*it)["weights"];
      require(w.is_object(), "haar.weights", "expected a map arrow -> weight");
      HaarSystem mu;
      mu.weight.assign(g.arrow_count(), 0.0);
      std::vector<bool> seen(g.arrow_count(), false);
      for (auto e = w.begin(); e != w.end(); ++e) {
        ArrowId a = g.arrow(e.key());
        mu.weight[idx(a)] = as_number(e.value(), "haar.weights." + e.key());
        seen[idx(a)] = true;
      }
      for (std::size_t k = 0; k < seen.size(); ++k)
        if (!seen[k]) schema("haar.weights", "no weight for arrow \"" + g.arrow_label(arrow_id(k)) + "\"");
      out.haar = std::move(mu);
    }
  }

  if (auto it = doc.find("nu"); it != doc.end()) {
    require(it->is_object(), "nu", "expected a map object -> mass");
    ObjectMeasure nu(g.object_count(), 0.0);
    std::vector<bool> seen(g.object_count(), false);
    for (auto e = it->begin(); e != it->end(); ++e) {
      ObjectId x = g.object(e.key());
      nu[idx(x)] = as_number(e.value(), "nu." + e.key());
      seen[idx(x)] = true;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k]) schema("nu", "no mass for object \"" + g.object_label(object_id(k)) + "\"");
    out.nu = std::move(nu);
  }
  return out;
}

GroupoidDocument load_groupoid(const std::filesystem::path& path) { return parse_groupoid(read_text(path)); }

std::string write_groupoid(const GroupoidDocument& doc) {
  const FiniteGroupoid& g = doc.groupoid;
  GroupoidTables t = g.tables();
  std::ostringstream os;
  os << "{\n  \"objects\": [";
  for (std::size_t k = 0; k < t.objects.size(); ++k) os << (k ? ", " : "") << quoted(t.objects[k]);
  os << "],\n  \"arrows\": [";
  for (const auto& a : g.arrows())
    os << (idx(a.id) ? "," : "") << "\n    {\"id\": " << quoted(g.arrow_label(a.id))
       << ", \"src\": " << quoted(g.object_label(a.src)) << ", \"tgt\": " << quoted(g.object_label(a.tgt)) << "}";
  os << "\n  ],\n  \"compose\": [";
  for (std::size_t k = 0; k < t.compose.size(); ++k) {
    const auto& e = t.compose[k];
    os << (k ? "," : "") << "\n    [" << quoted(t.arrow_labels[idx(e.first)]) << ", "
       << quoted(t.arrow_labels[idx(e.second)]) << ", " << quoted(t.arrow_labels[idx(e.result)]) << "]";
  }
  os << "\n  ],\n  \"inverse\": [";
  bool first = true;
  for (std::size_t k = 0; k < t.inverse.size(); ++k) {
    if (!t.inverse[k]) continue;
    os << (first ? "" : ",") << "\n    [" << quoted(t.arrow_labels[k]) << ", "
       << quoted(t.arrow_labels[idx(*t.inverse[k])]) << "]";
    first = false;
  }
  os << "\n  ],\n  \"units\": {";
  first = true;
  for (std::size_t x = 0; x < t.units.size(); ++x) {
    if (!t.units[x]) continue;
    os << (first ? "" : ", ") << quoted(t.objects[x]) << ": " << quoted(t.arrow_labels[idx(*t.units[x])]);
    first = false;
  }
  os << "}";
  if (doc.haar) {
    os << ",\n  \"haar\": {\"weights\": {";
    for (std::size_t k = 0; k < doc.haar->weight.size(); ++k)
      os << (k ? ", " : "") << quoted(t.arrow_labels[k]) << ": " << num(doc.haar->weight[k]);
    os << "}}";
  }
  if (doc.nu) {
    os << ",\n  \"nu\": {";
    for (std::size_t x = 0; x < doc.nu->size(); ++x)
      os << (x ? ", " : "") << quoted(t.objects[x]) << ": " << num((*doc.nu)[x]);
    os << "}";
  }
  os << "\n}\n";
  return os.str();
}

GroupoidFunction parse_function(std::string_view text, const FiniteGroupoid& g, bool sparse) {
  json doc = parse_json(text);
  require(doc.is_object(), "function", "expected a map arrow -> [re, im]");
  GroupoidFunction f(g.arrow_count());
  std::vector<bool> seen(g.arrow_count(), false);
  for (auto e = doc.begin(); e != doc.end(); ++e) {
    ArrowId a = g.arrow(e.key());
    f[idx(a)] = as_complex(e.value(), e.key());
    seen[idx(a)] = true;
  }
  if (!sparse)
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k]) schema("function", "no value for arrow \"" + g.arrow_label(arrow_id(k)) + "\" (use --sparse)");
  return f;
}

GroupoidFunction load_function(const std::filesystem::path& path, const FiniteGroupoid& g, bool sparse) {
  return parse_function(read_text(path), g, sparse);
}

std::string write_function(const FiniteGroupoid& g, const GroupoidFunction& f) {
  if (f.size() != g.arrow_count()) throw ShapeMismatch("function length differs from the arrow count");
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < f.size(); ++k)
    os << (k ? "," : "") << "\n  " << quoted(g.arrow_label(arrow_id(k))) << ": " << complex_text(f[k]);
  os << "\n}\n";
  return os.str();
}

StructureTable parse_structure_table(std::string_view text) {
  json doc = parse_json(text);
  require(doc.is_object(), "document", "expected an object");
  only_members(doc, {"basis", "products", "star"}, "document");
  std::vector<std::string> basis = string_list(member(doc, "basis", "document"), "basis");
  require(!basis.empty(), "basis", "expected at least one element");
  std::set<std::string> unique(basis.begin(), basis.end());
  require(unique.size() == basis.size(), "basis", "labels must be distinct");
  StructureTable t = StructureTable::with_basis(basis);

  const json& products = member(doc, "products", "document");
  require(products.is_array(), "products", "expected a list");
  for (std::size_t k = 0; k < products.size(); ++k) {
    std::string where = "products[" + std::to_string(k) + "]";
    const json& p = products[k];
    require(p.is_array() && p.size() == 3 && p[2].is_object(), where, "expected [i, j, {k: [re, im]}]");
    std::size_t i = t.index_of(as_string(p[0], where)), j = t.index_of(as_string(p[1], where));
    if (t.defined(i, j)) schema(where, "product given twice");
    Vector v(t.dim(), Complex{});
    for (auto e = p[2].begin(); e != p[2].end(); ++e) v[t.index_of(e.key())] = as_complex(e.value(), where);
    t.set_product(i, j, std::move(v));
  }

  if (auto it = doc.find("star"); it != doc.end()) {
    require(it->is_object(), "star", "expected a map i -> [j, [re, im]]");
    for (auto e = it->begin(); e != it->end(); ++e) {
      std::string where = "star." + e.key();
      require(e.value().is_array() && e.value().size() == 2, where, "expected [j, [re, im]]");
      t.star[t.index_of(e.key())] = {t.index_of(as_string(e.value()[0], where)), as_complex(e.value()[1], where)};
    }
  }
  return t;
}

StructureTable load_structure_table(const std::filesystem::path& path) {
  return parse_structure_table(read_text(path));
}

std::string write_structure_table(const StructureTable& t) {
  std::ostringstream os;
  os << "{\n  \"basis\": [";
  for (std::size_t k = 0; k < t.dim(); ++k) os << (k ? ", " : "") << quoted(t.labels[k]);
  os << "],\n  \"products\": [";
  bool first = true;
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) {
      if (!t.defined(i, j)) continue;
      os << (first ? "" : ",") << "\n    [" << quoted(t.labels[i]) << ", " << quoted(t.labels[j]) << ", {";
      bool inner = true;
      for (std::size_t k = 0; k < t.dim(); ++k) {
        if (t.coeff[i][j][k] == Complex{}) continue;
        os << (inner ? "" : ", ") << quoted(t.labels[k]) << ": " << complex_text(t.coeff[i][j][k]);
        inner = false;
      }
      os << "}]";
      first = false;
    }
  os << "\n  ],\n  \"star\": {";
  for (std::size_t k = 0; k < t.dim(); ++k)
    os << (k ? "," : "") << "\n    " << quoted(t.labels[k]) << ": [" << quoted(t.labels[t.star[k].index]) << ", "
       << complex_text(t.star[k].phase) << "]";
  os << "\n  }\n}\n";
  return os.str();
}

namespace {

GroupoidMap parse_map(const json& desc, const FiniteGroupoid& from, const FiniteGroupoid& to,
                      const std::string& where) {
  GroupoidMap m;
  m.objects.assign(from.object_count(), object_id(0));
  m.arrows.assign(from.arrow_count(), kNoArrow);
  std::vector<bool> seen_o(from.object_count(), false), seen_a(from.arrow_count(), false);

  auto object_ref = [&](const json& j, const FiniteGroupoid& g, const std::string& w) {
    if (j.is_number_unsigned()) {
      auto k = j.get<std::size_t>();
      require(k < g.object_count(), w, "object index out of range");
      return object_id(k);
    }
    return g.object(as_string(j, w));
  };
  auto arrow_ref = [&](const json& j, const FiniteGroupoid& g, const std::string& w) {
    if (j.is_number_unsigned()) {
      auto k = j.get<std::size_t>();
      require(k < g.arrow_count(), w, "arrow index out of range");
      return arrow_id(k);
    }
    return g.arrow(as_string(j, w));
  };

  const json& objects = member(desc, "objects", where);
  require(objects.is_array(), where + ".objects", "expected a list of pairs");
  for (std::size_t k = 0; k < objects.size(); ++k) {
    std::string w = where + ".objects[" + std::to_string(k) + "]";
    require(objects[k].is_array() && objects[k].size() == 2, w, "expected [from, to]");
    ObjectId x = object_ref(objects[k][0], from, w);
    if (seen_o[idx(x)]) schema(w, "object mapped twice");
    seen_o[idx(x)] = true;
    m.objects[idx(x)] = object_ref(objects[k][1], to, w);
  }
  const json& arrows = member(desc, "arrows", where);
  require(arrows.is_array(), where + ".arrows", "expected a list of pairs");
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    std::string w = where + ".arrows[" + std::to_string(k) + "]";
    require(arrows[k].is_array() && arrows[k].size() == 2, w, "expected [from, to]");
    ArrowId a = arrow_ref(arrows[k][0], from, w);
    if (seen_a[idx(a)]) schema(w, "arrow mapped twice");
    seen_a[idx(a)] = true;
    m.arrows[idx(a)] = arrow_ref(arrows[k][1], to, w);
  }
  for (std::size_t k = 0; k < seen_o.size(); ++k)
    if (!seen_o[k]) schema(where, "object \"" + from.object_label(object_id(k)) + "\" is not mapped");
  for (std::size_t k = 0; k < seen_a.size(); ++k)
    if (!seen_a[k]) schema(where, "arrow \"" + from.arrow_label(arrow_id(k)) + "\" is not mapped");
  return m;
}

} // namespace

InductiveSystem load_manifest(const std::filesystem::path& path) {
  json doc = parse_json(read_text(path));
  const auto dir = path.parent_path();
  require(doc.is_object(), "manifest", "expected an object");
  only_members(doc, {"pieces", "embeddings", "ambient"}, "manifest");

  InductiveSystem sys;
  std::map<std::string, std::size_t> by_name;
  const json& pieces = member(doc, "pieces", "manifest");
  require(pieces.is_array() && !pieces.empty(), "pieces", "expected a non-empty list");
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    std::string where = "pieces[" + std::to_string(k) + "]";
    require(pieces[k].is_object(), where, "expected {name, file}");
    only_members(pieces[k], {"name", "file"}, where);
    std::string name = as_string(member(pieces[k], "name", where), where + ".name");
    if (!by_name.emplace(name, k).second) schema(where, "duplicate piece name \"" + name + "\"");
    sys.names.push_back(name);
    sys.pieces.push_back(load_groupoid(dir / as_string(member(pieces[k], "file", where), where + ".file")).groupoid);
  }
  auto piece = [&](const json& j, const std::string& where) {
    std::string name = as_string(j, where);
    auto it = by_name.find(name);
    if (it == by_name.end()) throw UnknownLabel(name);
    return it->second;
  };

  if (auto it = doc.find("embeddings"); it != doc.end()) {
    require(it->is_array(), "embeddings", "expected a list");
    for (std::size_t k = 0; k < it->size(); ++k) {
      std::string where = "embeddings[" + std::to_string(k) + "]";
      const json& e = (*it)[k];
      require(e.is_object(), where, "expected an object");
      only_members(e, {"from", "to", "objects", "arrows"}, where);
      Embedding emb;
      emb.from = piece(member(e, "from", where), where + ".from");
      emb.to = piece(member(e, "to", where), where + ".to");
      emb.map = parse_map(e, sys.pieces[emb.from], sys.pieces[emb.to], where);
      sys.embeddings.push_back(std::move(emb));
    }
  }

  if (auto it = doc.find("ambient"); it != doc.end()) {
    require(it->is_object(), "ambient", "expected {file, maps}");
    only_members(*it, {"file", "maps"}, "ambient");
    sys.ambient = load_groupoid(dir / as_string(member(*it, "file", "ambient"), "ambient.file")).groupoid;
    const json& maps = member(*it, "maps", "ambient");
    require(maps.is_array(), "ambient.maps", "expected a list");
    std::vector<std::optional<GroupoidMap>> found(sys.pieces.size());
    for (std::size_t k = 0; k < maps.size(); ++k) {
      std::string where = "ambient.maps[" + std::to_string(k) + "]";
      require(maps[k].is_object(), where, "expected {piece, objects, arrows}");
      only_members(maps[k], {"piece", "objects", "arrows"}, where);
      std::size_t p = piece(member(maps[k], "piece", where), where + ".piece");
      if (found[p]) schema(where, "piece mapped twice");
      found[p] = parse_map(maps[k], sys.pieces[p], *sys.ambient, where);
    }
    for (std::size_t p = 0; p < found.size(); ++p) {
      if (!found[p]) schema("ambient.maps", "no map for piece \"" + sys.names[p] + "\"");
      sys.to_ambient.push_back(*found[p]);
    }
  }
  return sys;
}

std::string write_matrix(const Matrix& m) {
  std::ostringstream os;
  os << "{\"rows\": " << m.rows() << ", \"cols\": " << m.cols() << ", \"data\": [";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << (i || j ? ", " : "") << complex_text(m(i, j));
  os << "]}\n";
  return os.str();
}

} // namespace groupalg
