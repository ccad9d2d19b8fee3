#include "lss/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lss/dd.hpp"
#include "lss/errors.hpp"

namespace lss {

using nlohmann::json;

FamilyFile parse_family_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw invalid_input(std::string("family file: JSON parse error: ") + e.what());
  }
  FamilyFile ff;
  try {
    const int dim = j.at("dim").get<int>();
    if (dim < 1 || dim > kMaxDim) throw invalid_input("family file: dim out of range 1..8");
    std::vector<Matrix> mats;
    std::vector<std::string> labels;
    for (const auto& jm : j.at("matrices")) {
      const auto entries = jm.at("entries").get<std::vector<double>>();
      if (static_cast<int>(entries.size()) != dim * dim)
        throw invalid_input("family file: entry count does not match dim*dim");
      mats.push_back(Matrix::from_row_major(dim, dim, entries));
      labels.push_back(jm.value("label", "A" + std::to_string(labels.size())));
    }
    ff.family = MatrixFamily(std::move(mats), std::move(labels));

    if (j.contains("alpha")) {
      if (j["alpha"].is_string())
        ff.alpha = parse_alpha_token(j["alpha"].get<std::string>());
      else
        ff.alpha = j["alpha"].get<double>();
    }

    if (j.contains("blocks")) {
      const auto& jb = j["blocks"];
      const int d1 = jb.at("d1").get<int>();
      const int d2 = jb.at("d2").get<int>();
      if (d1 < 1 || d2 < 1 || d1 + d2 != dim)
        throw invalid_input("family file: blocks d1+d2 must equal dim");
      BlockFamily bf;
      std::vector<Matrix> b1, b2, cps;
      for (const auto& m : ff.family.matrices) {
        for (int i = d1; i < dim; ++i)
          for (int jj = 0; jj < d1; ++jj)
            if (m(i, jj) != 0.0)
              throw invalid_input("family file: matrices are not block upper triangular at d1");
        b1.push_back(m.block(0, 0, d1, d1));
        b2.push_back(m.block(d1, d1, d2, d2));
        cps.push_back(m.block(0, d1, d1, d2));
      }
      if (jb.contains("couplings")) {
        const auto& jc = jb["couplings"];
        if (jc.size() != cps.size()) throw invalid_input("family file: couplings count mismatch");
        for (std::size_t i = 0; i < cps.size(); ++i) {
          const auto entries = jc[i].get<std::vector<double>>();
          const Matrix given = Matrix::from_row_major(d1, d2, entries);
          if (!(given == cps[i]))
            throw invalid_input("family file: couplings disagree with the top-right blocks");
        }
      }
      bf.block1 = MatrixFamily(std::move(b1), ff.family.labels);
      bf.block2 = MatrixFamily(std::move(b2), ff.family.labels);
      bf.couplings = std::move(cps);
      bf.validate();
      ff.blocks = std::move(bf);
    }
  } catch (const json::exception& e) {
    throw invalid_input(std::string("family file: ") + e.what());
  }
  return ff;
}

std::string family_file_json(const FamilyFile& ff) {
  json j;
  j["dim"] = ff.family.dim();
  j["matrices"] = json::array();
  for (std::size_t i = 0; i < ff.family.size(); ++i) {
    json jm;
    if (i < ff.family.labels.size()) jm["label"] = ff.family.labels[i];
    jm["entries"] = ff.family[i].row_major();
    j["matrices"].push_back(std::move(jm));
  }
  if (ff.alpha) j["alpha"] = *ff.alpha;
  if (ff.blocks) {
    json jb;
    jb["d1"] = ff.blocks->d1();
    jb["d2"] = ff.blocks->d2();
    jb["couplings"] = json::array();
    for (const auto& c : ff.blocks->couplings) jb["couplings"].push_back(c.row_major());
    j["blocks"] = std::move(jb);
  }
  return j.dump(2) + "\n";
}

FamilyFile load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open family file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family_json(buf.str());
}

void save_family_file(const FamilyFile& ff, const std::string& path) {
  write_text_file(path, family_file_json(ff));
}

double parse_alpha_token(const std::string& token) {
  if (token == "pi*sqrt2") return dd::to_double(dd::mul(dd::kPi, dd::sqrt(2.0)));
  if (token == "pi*phi") {
    const auto phi = dd::mul(dd::add(dd::sqrt(5.0), {1.0, 0.0}), 0.5);
    return dd::to_double(dd::mul(dd::kPi, phi));
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw invalid_input("alpha: trailing characters in '" + token + "'");
    return v;
  } catch (const std::exception&) {
    throw invalid_input("alpha: expected pi*sqrt2, pi*phi, or a numeric literal, got '" + token + "'");
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot write file: " + path);
  out << content;
}

}  // namespace lss
