#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "lmoment/errors.hpp"
#include "lmoment/sdp.hpp"

namespace lmoment {
namespace {

constexpr const char* kHeader = "LMOMENT-CONIC 1";

std::string key_text(const MultiIndex& key) {
  std::string s;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(key[i]);
  }
  return s;
}

MultiIndex parse_key(const std::string& text) {
  std::vector<int> exps;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ',')) exps.push_back(std::stoi(part));
  return MultiIndex(std::move(exps));
}

std::string expect(std::istream& is, const char* word) {
  std::string tok;
  if (!(is >> tok) || tok != word) throw ValidationError(std::string("conic format: expected '") + word + "', got '" + tok + "'");
  return tok;
}

std::size_t read_count(std::istream& is, const char* word) {
  expect(is, word);
  std::size_t n = 0;
  if (!(is >> n)) throw ValidationError(std::string("conic format: bad count after '") + word + "'");
  return n;
}

}  // namespace

void write_conic(std::ostream& os, const SdpProblem& problem) {
  const auto old_flags = os.flags();
  const auto old_prec = os.precision();
  os << std::setprecision(17);
  os << kHeader << '\n';
  os << "vars " << problem.variables.size() << '\n';
  for (const auto& key : problem.variables) os << key_text(key) << '\n';
  os << "fixed " << problem.fixed.size() << '\n';
  for (const auto& [key, v] : problem.fixed) os << key_text(key) << ' ' << v << '\n';
  os << "objective " << problem.objective.size() << '\n';
  for (const auto& [key, v] : problem.objective) os << key_text(key) << ' ' << v << '\n';
  os << "blocks " << problem.blocks.size() << '\n';
  for (const auto& block : problem.blocks) {
    std::size_t count = 0;
    for (const auto& [key, list] : block.map.entries()) count += list.size();
    std::string label = block.label;
    for (char& ch : label) {
      if (ch == ' ') ch = '_';
    }
    os << "block " << label << ' ' << block.size() << ' ' << block.map.nvars() << ' ' << count << '\n';
    for (const auto& [key, list] : block.map.entries()) {
      for (const auto& e : list) os << key_text(key) << ' ' << e.row << ' ' << e.col << ' ' << e.coef << '\n';
    }
    if (block.congruence.size() == 0) {
      os << "congruence 0\n";
    } else {
      os << "congruence " << block.congruence.rows() << '\n';
      for (Eigen::Index r = 0; r < block.congruence.rows(); ++r) {
        for (Eigen::Index c = 0; c < block.congruence.cols(); ++c) os << (c ? " " : "") << block.congruence(r, c);
        os << '\n';
      }
    }
  }
  os << "bounds " << problem.upper_bounds.size() << '\n';
  for (const auto& [key, v] : problem.upper_bounds) os << key_text(key) << ' ' << v << '\n';
  os << "end\n";
  os.flags(old_flags);
  os.precision(old_prec);
}

SdpProblem read_conic(std::istream& is) {
  std::string header;
  while (header.empty() && std::getline(is, header)) {
  }
  if (header != kHeader) throw ValidationError("conic format: unsupported header '" + header + "'");
  SdpProblem p;
  std::string tok;
  double v = 0.0;
  const std::size_t nv = read_count(is, "vars");
  for (std::size_t i = 0; i < nv; ++i) {
    is >> tok;
    p.variables.push_back(parse_key(tok));
  }
  const std::size_t nf = read_count(is, "fixed");
  for (std::size_t i = 0; i < nf; ++i) {
    is >> tok >> v;
    p.fixed.emplace(parse_key(tok), v);
  }
  const std::size_t no = read_count(is, "objective");
  for (std::size_t i = 0; i < no; ++i) {
    is >> tok >> v;
    p.objective.emplace(parse_key(tok), v);
  }
  const std::size_t nb = read_count(is, "blocks");
  for (std::size_t b = 0; b < nb; ++b) {
    std::string label;
    std::size_t size = 0, nvars = 0, count = 0;
    expect(is, "block");
    is >> label >> size >> nvars >> count;
    if (!is) throw ValidationError("conic format: bad block header");
    LinearMatrixMap map(size, nvars);
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t r = 0, c = 0;
      is >> tok >> r >> c >> v;
      map.add(parse_key(tok), r, c, v);
    }
    const std::size_t nc = read_count(is, "congruence");
    Eigen::MatrixXd t;
    if (nc) {
      t.resize(static_cast<Eigen::Index>(nc), static_cast<Eigen::Index>(nc));
      for (Eigen::Index r = 0; r < t.rows(); ++r) {
        for (Eigen::Index c = 0; c < t.cols(); ++c) is >> t(r, c);
      }
    }
    p.blocks.push_back({label, std::move(map), std::move(t)});
  }
  const std::size_t nu = read_count(is, "bounds");
  for (std::size_t i = 0; i < nu; ++i) {
    is >> tok >> v;
    p.upper_bounds.emplace(parse_key(tok), v);
  }
  expect(is, "end");
  if (!is) throw ValidationError("conic format: truncated input");
  p.validate();
  return p;
}

}  // namespace lmoment
