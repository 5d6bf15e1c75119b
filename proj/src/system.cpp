#include "cox/system.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "core_detail.hpp"
#include "engine.hpp"

namespace cox {

namespace detail {

SystemCore::SystemCore(std::vector<std::string> labels_in,
                       std::vector<int> matrix_in, Caps caps_in)
    : rank(static_cast<int>(labels_in.size())),
      labels(std::move(labels_in)),
      matrix(std::move(matrix_in)),
      caps(caps_in) {
  engine = std::make_unique<Engine>(*this);
}

SystemCore::~SystemCore() = default;

Engine& engine_of(const SystemCore& core) { return *core.engine; }

namespace {

void validate(const std::vector<std::string>& labels,
              const std::vector<int>& matrix) {
  const int rank = static_cast<int>(labels.size());
  if (rank < 1 || rank > kMaxRank)
    throw ParseError(ParseError::Kind::BadRank, 0,
                     "rank must be between 1 and 64");
  for (int i = 0; i < rank; ++i) {
    if (labels[i].empty())
      throw ParseError(ParseError::Kind::MalformedHeader, 0,
                       "empty generator label");
    for (char c : labels[i])
      if (std::isspace(static_cast<unsigned char>(c)))
        throw ParseError(ParseError::Kind::MalformedHeader, 0,
                         "generator label contains whitespace");
    for (int j = 0; j < i; ++j)
      if (labels[i] == labels[j])
        throw ParseError(ParseError::Kind::DuplicateLabel, 0,
                         "duplicate generator label '" + labels[i] + "'");
  }
  if (matrix.size() != static_cast<std::size_t>(rank) * rank)
    throw ParseError(ParseError::Kind::BadRank, 0,
                     "matrix size does not match rank");
  for (int i = 0; i < rank; ++i) {
    if (matrix[i * rank + i] != 1)
      throw ParseError(ParseError::Kind::BadDiagonal, 0,
                       "diagonal entries must be 1");
    for (int j = 0; j < rank; ++j) {
      const int m = matrix[i * rank + j];
      if (i != j && m != 0 && m < 2)
        throw ParseError(ParseError::Kind::BadEntry, 0,
                         "off-diagonal entries must be 0 (infinity) or >= 2");
      if (m != matrix[j * rank + i])
        throw ParseError(ParseError::Kind::NonSymmetric, 0,
                         "matrix is not symmetric");
    }
  }
}

// Classification of an irreducible diagram given as vertices of a connected
// component.  Finite types: A_n, B/C_n, D_n, E6, E7, E8, F4, H3, H4, I2(m).
bool component_is_finite(const detail::SystemCore& core,
                         const std::vector<Gen>& verts) {
  const int k = static_cast<int>(verts.size());
  if (k == 1) return true;

  struct Edge {
    int a, b, m;
  };
  std::vector<Edge> edges;
  std::vector<int> degree(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const int m = core.m(verts[i], verts[j]);
      if (m == 2) continue;
      if (m == 0) return false;  // infinite bond
      edges.push_back({i, j, m});
      ++degree[i];
      ++degree[j];
    }

  if (k == 2) return true;  // I2(m), m finite

  // Rank >= 3 finite diagrams are trees.
  if (static_cast<int>(edges.size()) != k - 1) return false;

  int big_edges = 0, big_label = 0, big_edge_idx = -1;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    if (edges[e].m > 3) {
      ++big_edges;
      big_label = edges[e].m;
      big_edge_idx = e;
    }
  if (big_edges > 1) return false;

  int max_degree = 0, branch_count = 0, branch_vertex = -1;
  for (int i = 0; i < k; ++i) {
    max_degree = std::max(max_degree, degree[i]);
    if (degree[i] >= 3) {
      ++branch_count;
      branch_vertex = i;
    }
  }
  if (max_degree > 3 || branch_count > 1) return false;

  if (big_edges == 1) {
    if (branch_count > 0) return false;  // labelled edge on a path only
    const Edge& e = edges[big_edge_idx];
    const bool at_end = degree[e.a] == 1 || degree[e.b] == 1;
    if (big_label == 4) {
      if (at_end) return true;               // B/C_n
      return k == 4 && !at_end;              // F4: middle edge of a 4-path
    }
    if (big_label == 5) return at_end && k <= 4;  // H3, H4
    return false;  // labels >= 6 are rank-2 only
  }

  // All labels 3.
  if (branch_count == 0) return true;  // A_n
  // Arm lengths from the unique branch vertex.
  std::vector<std::vector<int>> adj(k);
  for (const Edge& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<int> arms;
  for (int nb : adj[branch_vertex]) {
    int len = 1, prev = branch_vertex, cur = nb;
    while (true) {
      int next = -1;
      for (int cand : adj[cur])
        if (cand != prev) next = cand;
      if (next == -1) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() != 3) return false;
  if (arms[0] == 1 && arms[1] == 1) return true;  // D_n
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return true;  // E6/E7/E8
  return false;
}

}  // namespace
}  // namespace detail

CoxeterSystem::CoxeterSystem(std::vector<std::string> labels,
                             std::vector<int> matrix, Caps caps) {
  detail::validate(labels, matrix);
  core_ = std::make_shared<const detail::SystemCore>(std::move(labels),
                                                     std::move(matrix), caps);
}

int CoxeterSystem::rank() const { return core_->rank; }

const std::string& CoxeterSystem::label(Gen g) const {
  return core_->labels[g];
}

std::optional<Gen> CoxeterSystem::find_label(std::string_view name) const {
  for (int i = 0; i < core_->rank; ++i)
    if (core_->labels[i] == name) return static_cast<Gen>(i);
  return std::nullopt;
}

int CoxeterSystem::entry(Gen a, Gen b) const { return core_->m(a, b); }

const Caps& CoxeterSystem::caps() const { return core_->caps; }

std::string CoxeterSystem::serialize() const {
  std::ostringstream out;
  out << "generators:";
  for (const auto& l : core_->labels) out << ' ' << l;
  out << "\nmatrix:\n";
  for (int i = 0; i < core_->rank; ++i) {
    for (int j = 0; j < core_->rank; ++j) {
      if (j) out << ' ';
      out << core_->m(static_cast<Gen>(i), static_cast<Gen>(j));
    }
    out << '\n';
  }
  return out.str();
}

Element CoxeterSystem::identity() const {
  return detail::Access::make_element(core_, Word{});
}

Word CoxeterSystem::parse_word(std::string_view text) const {
  Word out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    auto g = find_label(token);
    if (!g)
      throw ParseError(ParseError::Kind::UnknownLabel, 0,
                       "unknown generator label '" + token + "'");
    out.push_back(*g);
  }
  return out;
}

std::string CoxeterSystem::format_word(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += core_->labels[w[i]];
  }
  return out;
}

bool CoxeterSystem::finite_type(GenSubset I) const {
  return detail::engine_of(*core_).finite_type(I);
}

GenSubset CoxeterSystem::component(GenSubset I, Gen g) const {
  if (!I.contains(g)) return GenSubset{};
  GenSubset comp;
  comp.add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    for (Gen a : comp.members())
      for (Gen b : I.members())
        if (!comp.contains(b) && core_->m(a, b) != 2) {
          comp.add(b);
          grew = true;
        }
  }
  return comp;
}

bool CoxeterSystem::same_system(const CoxeterSystem& other) const {
  return core_.get() == other.core_.get();
}

namespace detail {
bool finite_type_impl(const SystemCore& core, GenSubset I) {
  GenSubset left = I;
  while (!left.empty()) {
    Gen g = left.members().front();
    // Component of g inside I.
    GenSubset comp;
    comp.add(g);
    bool grew = true;
    while (grew) {
      grew = false;
      for (Gen a : comp.members())
        for (Gen b : left.members())
          if (!comp.contains(b) && core.m(a, b) != 2) {
            comp.add(b);
            grew = true;
          }
    }
    if (!component_is_finite(core, comp.members())) return false;
    left.bits &= ~comp.bits;
  }
  return true;
}
}  // namespace detail

CoxeterSystem parse_system(std::string_view text, Caps caps) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  auto next_content_line = [&](bool required) -> std::optional<std::string> {
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (line[pos] == '#') continue;
      return line;
    }
    if (required)
      throw ParseError(ParseError::Kind::MalformedHeader, lineno,
                       "unexpected end of file");
    return std::nullopt;
  };

  auto header = next_content_line(true);
  std::istringstream hs(*header);
  std::string tag;
  hs >> tag;
  if (tag != "generators:")
    throw ParseError(ParseError::Kind::MalformedHeader, lineno,
                     "expected 'generators:' line");
  std::vector<std::string> labels;
  std::string name;
  while (hs >> name) labels.push_back(name);
  if (labels.empty())
    throw ParseError(ParseError::Kind::MalformedHeader, lineno,
                     "no generator labels given");
  const int rank = static_cast<int>(labels.size());
  if (rank > kMaxRank)
    throw ParseError(ParseError::Kind::BadRank, lineno,
                     "more than 64 generators");
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < i; ++j)
      if (labels[i] == labels[j])
        throw ParseError(ParseError::Kind::DuplicateLabel, lineno,
                         "duplicate generator label '" + labels[i] + "'");

  auto mline = next_content_line(true);
  {
    std::istringstream ms(*mline);
    ms >> tag;
    std::string rest;
    if (tag != "matrix:" || (ms >> rest))
      throw ParseError(ParseError::Kind::MalformedHeader, lineno,
                       "expected 'matrix:' line");
  }

  std::vector<int> matrix(static_cast<std::size_t>(rank) * rank, 0);
  for (int i = 0; i < rank; ++i) {
    auto row = next_content_line(true);
    std::istringstream rs(*row);
    for (int j = 0; j < rank; ++j) {
      long v;
      if (!(rs >> v) || v < 0)
        throw ParseError(ParseError::Kind::BadEntry, lineno,
                         "expected a non-negative integer entry");
      matrix[i * rank + j] = static_cast<int>(v);
    }
    std::string extra;
    if (rs >> extra)
      throw ParseError(ParseError::Kind::BadEntry, lineno,
                       "too many entries in matrix row");
    // Row-local checks so the error carries this line number.
    if (matrix[i * rank + i] != 1)
      throw ParseError(ParseError::Kind::BadDiagonal, lineno,
                       "diagonal entries must be 1");
    for (int j = 0; j < rank; ++j) {
      const int m = matrix[i * rank + j];
      if (i != j && m != 0 && m < 2)
        throw ParseError(ParseError::Kind::BadEntry, lineno,
                         "off-diagonal entries must be 0 (infinity) or >= 2");
      if (j < i && m != matrix[j * rank + i])
        throw ParseError(ParseError::Kind::NonSymmetric, lineno,
                         "matrix is not symmetric");
    }
  }
  if (auto extra = next_content_line(false))
    throw ParseError(ParseError::Kind::TrailingInput, lineno,
                     "unexpected content after matrix");

  return CoxeterSystem(std::move(labels), std::move(matrix), caps);
}

}  // namespace cox
