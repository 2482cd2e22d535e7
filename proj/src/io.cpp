#include "toruslab/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "toruslab/wedge.hpp"

namespace tlab {

Json poly_json(const RatPolynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(rat_to_string(c));
  Json out;
  out["coefficients_ascending"] = coeffs;
  out["degree"] = p.degree();
  out["text"] = p.to_string();
  return out;
}

Json torus_spec_json(const TorusSpec& spec) {
  Json out;
  out["N"] = spec.N;
  out["split_rank_total"] = spec.split_rank();
  out["l0"] = spec.l0;
  Json roots = Json::array();
  for (const auto& r : spec.split_roots) roots.push_back(rat_to_string(r));
  out["split_roots"] = roots;

  Json fields = Json::array();
  for (const auto& f : spec.fields) {
    Json fj;
    fj["poly"] = poly_json(f->poly());
    fj["degree"] = f->degree();
    fj["real_embeddings"] = f->num_real();
    fj["complex_pairs"] = f->num_complex_pairs();
    Json rts = Json::array();
    for (const auto& z : f->roots())
      rts.push_back(Json::array({fmt_double(z.re.convert_to<double>()),
                                 fmt_double(z.im.convert_to<double>())}));
    fj["roots"] = rts;
    fields.push_back(fj);
  }
  out["fields"] = fields;
  out["block_start"] = spec.block_start;
  out["block_size"] = spec.block_size;
  Json vnames = Json::array();
  for (int v = 0; v < spec.num_vertices(); ++v) vnames.push_back(spec.vertex_name(v));
  out["vertices"] = vnames;

  Json wf = Json::array();
  for (const auto& w : spec.weight_family) {
    Json wj;
    wj["name"] = w.name;
    Json idx = Json::array();
    for (int i : w.index_set) idx.push_back(i + 1);
    wj["index_set"] = idx;
    Json chi = Json::array();
    for (int v = 0; v < w.character.size(); ++v) chi.push_back(w.character[v]);
    wj["character"] = chi;
    wf.push_back(wj);
  }
  out["weight_family"] = wf;

  Json chart = Json::array();
  for (int i = 0; i < spec.chart.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < spec.chart.cols(); ++j) row.push_back(spec.chart(i, j));
    chart.push_back(row);
  }
  out["chart"] = chart;
  return out;
}

Json graph_json(const DivergenceGraph& g) {
  Json out;
  out["vertices"] = g.vertex_names;
  Json adj = Json::array();
  for (int v = 0; v < g.size(); ++v) {
    Json nb = Json::array();
    for (const auto& e : g.edges) {
      if (e.first == v) nb.push_back(e.second + 1);
      if (e.second == v) nb.push_back(e.first + 1);
    }
    adj.push_back(nb);
  }
  out["adjacency"] = adj;
  Json edges = Json::array();
  for (const auto& e : g.edges)
    edges.push_back(Json::array({e.first + 1, e.second + 1}));
  out["edges"] = edges;
  out["connected"] = is_connected(g);
  return out;
}

Json wedge_json(const VecQ& w, int dim, int grade) {
  auto subsets = subsets_of_grade(dim, grade);
  if (w.size() != subsets.size())
    throw std::invalid_argument("wedge coordinate count does not match the grade");
  Json out = Json::object();
  for (size_t i = 0; i < subsets.size(); ++i) {
    if (w[i] == 0) continue;
    std::string key;
    for (size_t k = 0; k < subsets[i].size(); ++k) {
      if (k) key += ",";
      key += std::to_string(subsets[i][k] + 1);
    }
    out[key] = rat_to_string(w[i]);
  }
  return out;
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) os << ",";
    os << header[i];
  }
  os << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width does not match the header");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << row[i];
    }
    os << "\n";
  }
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);
  std::vector<double> out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] == "...") {
      if (out.size() < 2 || i + 1 != parts.size() - 1)
        throw std::invalid_argument("'...' needs two leading values and one final value");
      double ratio = out[out.size() - 1] / out[out.size() - 2];
      if (!(ratio > 1))
        throw std::invalid_argument("geometric schedule needs an increasing ratio");
      double target = std::stod(parts[i + 1]);
      double next = out.back() * ratio;
      while (next < target * (1 - 1e-9)) {
        out.push_back(next);
        next = out.back() * ratio;
      }
      out.push_back(target);
      return out;
    }
    if (parts[i].empty()) throw std::invalid_argument("empty schedule entry");
    out.push_back(std::stod(parts[i]));
  }
  return out;
}

RatPolynomial parse_poly_arg(const std::string& text) {
  if (text.find('x') != std::string::npos) return RatPolynomial::parse(text);
  std::vector<BigRational> descending;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      descending.push_back(rat_from_string(cur));
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  descending.push_back(rat_from_string(cur));
  std::vector<BigRational> ascending(descending.rbegin(), descending.rend());
  return RatPolynomial(std::move(ascending));
}

Eigen::MatrixXd parse_matrix_arg(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row_text;
  while (std::getline(ss, row_text, ';')) {
    std::vector<double> row;
    std::stringstream rs(row_text);
    std::string cell;
    while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("ragged matrix rows");
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace tlab
