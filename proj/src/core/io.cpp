#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace freelip {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) parse_error(std::string("missing field '") + name + "'");
  return doc.at(name);
}

std::vector<std::string> split_csv_row(std::string_view row) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : row) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  for (auto& s : cells) {
    auto a = s.find_first_not_of(" \t\"");
    auto b = s.find_last_not_of(" \t\"");
    s = a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  }
  return cells;
}

SpacePtr space_field(const Json& doc, const std::string& dir) {
  const Json& s = field(doc, "space");
  if (s.is_string()) {
    std::filesystem::path p(s.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(dir) / p;
    return load_space(p.string());
  }
  return space_from_json(s);
}

std::string parent_dir(const std::string& path) {
  auto parent = std::filesystem::path(path).parent_path();
  return parent.empty() ? std::string(".") : parent.string();
}

}  // namespace

Json rational_to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& value) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(mpz_class(value.dump(), 10));
    if (value.is_number_float()) {
      std::string text = value.dump();
      if (text.find_first_of("eE") == std::string::npos) return parse_rational(text);
      return Rational(value.get<double>());
    }
  } catch (const Error&) {
    parse_error("cannot read '" + value.dump() + "' as a rational");
  } catch (const std::invalid_argument&) {
    parse_error("cannot read '" + value.dump() + "' as a rational");
  }
  parse_error("expected a number or a \"p/q\" string, got " + value.dump());
}

Json space_to_json(const MetricSpace& space) {
  Json out;
  out["labels"] = space.labels();
  out["base"] = space.label(space.base());
  out["backend"] = space.is_exact() ? "exact" : "float";
  Json rows = Json::array();
  for (PointId p : space.points()) {
    Json row = Json::array();
    for (PointId q : space.points()) {
      if (space.is_exact())
        row.push_back(rational_to_json(space.d(p, q)));
      else
        row.push_back(space.df(p, q));
    }
    rows.push_back(std::move(row));
  }
  out["dist"] = std::move(rows);
  return out;
}

SpacePtr space_from_json(const Json& doc, const std::optional<std::string>& base, double tol) {
  const Json& labels_json = field(doc, "labels");
  const Json& dist_json = field(doc, "dist");
  if (!labels_json.is_array() || !dist_json.is_array()) parse_error("'labels' and 'dist' must be arrays");
  std::vector<std::string> labels;
  for (const auto& l : labels_json) {
    if (!l.is_string()) parse_error("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  std::string base_label;
  if (base) {
    base_label = *base;
  } else {
    const Json& b = field(doc, "base");
    if (!b.is_string()) parse_error("'base' must be a string");
    base_label = b.get<std::string>();
  }
  std::string backend = doc.contains("backend") ? doc.at("backend").get<std::string>() : "exact";
  if (backend != "exact" && backend != "float") parse_error("backend must be 'exact' or 'float'");
  const std::size_t n = labels.size();
  if (dist_json.size() != n) parse_error("'dist' must have one row per label");
  for (const auto& row : dist_json) {
    if (!row.is_array() || row.size() != n) parse_error("'dist' must be a square matrix");
  }
  if (backend == "float") {
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Json& v = dist_json[i][j];
        dist[i][j] = v.is_number() ? v.get<double>() : to_double(rational_from_json(v));
      }
    return MetricSpace::approx(std::move(labels), std::move(dist), base_label, tol);
  }
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i][j] = rational_from_json(dist_json[i][j]);
  return MetricSpace::exact(std::move(labels), std::move(dist), base_label);
}

SpacePtr space_from_csv(std::string_view text, const std::string& base) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv_row(line));
  }
  if (rows.empty()) parse_error("empty CSV");
  std::vector<std::string> labels = rows.front();
  const std::size_t n = labels.size();
  if (rows.size() != n + 1) parse_error("CSV needs a header and one row per label");
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row = rows[i + 1];
    // A leading label column is allowed.
    if (row.size() == n + 1 && row.front() == labels[i]) row.erase(row.begin());
    if (row.size() != n) parse_error("CSV row " + std::to_string(i + 2) + " has " + std::to_string(row.size()) + " cells");
    for (std::size_t j = 0; j < n; ++j) {
      try {
        dist[i][j] = parse_rational(row[j]);
      } catch (const Error&) {
        parse_error("CSV cell (" + std::to_string(i + 2) + "," + std::to_string(j + 1) + ") is not a number");
      }
    }
  }
  return MetricSpace::exact(std::move(labels), std::move(dist), base);
}

std::string space_to_csv(const MetricSpace& space) {
  std::ostringstream out;
  for (std::size_t i = 0; i < space.size(); ++i) out << (i ? "," : "") << space.labels()[i];
  out << "\n";
  for (PointId p : space.points()) {
    for (PointId q : space.points()) {
      if (q.index) out << ",";
      if (space.is_exact())
        out << to_string(space.d(p, q));
      else
        out << space.df(p, q);
    }
    out << "\n";
  }
  return out.str();
}

SpacePtr load_space(const std::string& path, const std::optional<std::string>& base, double tol) {
  std::string text = read_text_file(path);
  if (std::filesystem::path(path).extension() == ".csv") {
    if (!base) throw Error(ErrorCode::kInvalidArgument, "CSV metric files need a base label");
    return space_from_csv(text, *base);
  }
  return space_from_json(parse_json_text(text), base, tol);
}

LipFunction function_from_json(const Json& doc, const std::string& dir) {
  SpacePtr space = space_field(doc, dir);
  const Json& values = field(doc, "values");
  if (!values.is_object()) parse_error("'values' must map labels to numbers");
  std::vector<Rational> v(space->size());
  std::vector<bool> seen(space->size(), false);
  for (const auto& [label, value] : values.items()) {
    PointId p = space->resolve(label);
    v[p.index] = rational_from_json(value);
    seen[p.index] = true;
  }
  for (PointId p : space->points()) {
    if (!seen[p.index] && p != space->base())
      throw Error(ErrorCode::kInvalidArgument, "no value given for '" + space->label(p) + "'");
  }
  return LipFunction(space, std::move(v));
}

Json function_to_json(const LipFunction& f, bool with_space) {
  Json out;
  if (with_space) out["space"] = space_to_json(f.space());
  Json values = Json::object();
  for (PointId p : f.space().points()) values[f.space().label(p)] = rational_to_json(f(p));
  out["values"] = std::move(values);
  return out;
}

LipFunction load_function(const std::string& path) {
  return function_from_json(parse_json_text(read_text_file(path)), parent_dir(path));
}

FreeVector vector_from_json(const Json& doc, const std::string& dir) {
  SpacePtr space = space_field(doc, dir);
  const Json& coeffs = field(doc, "coeffs");
  if (!coeffs.is_object()) parse_error("'coeffs' must map labels to numbers");
  std::map<std::size_t, Rational> c;
  for (const auto& [label, value] : coeffs.items()) c[space->resolve(label).index] += rational_from_json(value);
  return FreeVector(space, c);
}

Json vector_to_json(const FreeVector& mu, bool with_space) {
  Json out;
  if (with_space) out["space"] = space_to_json(mu.space());
  Json coeffs = Json::object();
  for (const auto& [index, value] : mu.coeffs()) coeffs[mu.space().labels()[index]] = rational_to_json(value);
  out["coeffs"] = std::move(coeffs);
  return out;
}

FreeVector load_vector(const std::string& path) {
  return vector_from_json(parse_json_text(read_text_file(path)), parent_dir(path));
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace freelip
