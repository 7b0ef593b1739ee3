#include "socrescale/io.hpp"

#include "socrescale/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

namespace socrescale {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Writing. One key per line; A gets one line per row.

std::string num(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return json(v).dump();
}

std::string num_list(const double* data, Index n) {
  std::string out = "[";
  for (Index i = 0; i < n; ++i) {
    if (i > 0) out += ", ";
    out += num(data[i]);
  }
  return out + "]";
}

std::string vec(const VectorXd& v) { return num_list(v.data(), v.size()); }

template <typename Int>
std::string int_list(const std::vector<Int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string ledger_list(const std::vector<double>& v) {
  return num_list(v.data(), static_cast<Index>(v.size()));
}

class ObjectWriter {
 public:
  void field(const std::string& key, const std::string& raw) {
    lines_.push_back(json(key).dump() + ": " + raw);
  }
  std::string finish(const std::string& indent = "") const {
    std::string out = "{\n";
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      out += indent + "  " + lines_[i];
      out += i + 1 < lines_.size() ? ",\n" : "\n";
    }
    return out + indent + "}";
  }

 private:
  std::vector<std::string> lines_;
};

std::string blocks_json(const ConeStructure& cones) {
  std::string out = "[";
  for (Index k = 0; k < cones.num_blocks(); ++k) {
    if (k > 0) out += ", ";
    const Block& b = cones.block(k);
    if (b.kind == BlockKind::HalfLine) {
      out += "{\"type\": \"halfline\"}";
    } else {
      out += "{\"type\": \"soc\", \"dim\": " + std::to_string(b.dim) + "}";
    }
  }
  return out + "]";
}

std::string matrix_json(const MatrixXd& a) {
  if (a.rows() == 0) return "[]";
  std::string out = "[\n";
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = a;
  for (Index i = 0; i < rm.rows(); ++i) {
    std::string row = num_list(rm.row(i).data(), rm.cols());
    row = row.substr(1, row.size() - 2);
    out += "    " + row + (i + 1 < rm.rows() ? ",\n" : "\n");
  }
  return out + "  ]";
}

std::string stats_json(const SolverStats& s) {
  ObjectWriter w;
  w.field("bp_calls", std::to_string(s.bp_calls));
  w.field("bp_iterations", std::to_string(s.bp_iterations));
  w.field("max_bp_iterations", std::to_string(s.max_bp_iterations));
  w.field("outer_iterations", std::to_string(s.outer_iterations));
  w.field("min_progress", num(s.min_progress));
  w.field("cuts_per_block", int_list(s.cuts_per_block));
  w.field("ledger", ledger_list(s.ledger));
  return w.finish("  ");
}

// ---------------------------------------------------------------------------
// Reading.

class Reader {
 public:
  Reader(const std::string& text, std::string source) : source_(std::move(source)) {
    try {
      root_ = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, source_ + ": " + e.what());
    }
    if (!root_.is_object()) fail("top level must be an object");
    const json& v = require(root_, "version");
    if (!v.is_string() || v.get<std::string>() != kFormatVersion) {
      fail(std::string("unsupported version, expected \"") + kFormatVersion + "\"");
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, source_ + ": " + msg);
  }

  const json& root() const { return root_; }

  const json& require(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
  }

  bool has(const json& obj, const char* key) const { return obj.contains(key); }

  double number(const json& j, const std::string& what) const {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s == "inf") return std::numeric_limits<double>::infinity();
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
      if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    fail(what + " must be a number");
  }

  Index integer(const json& j, const std::string& what) const {
    if (!j.is_number_integer()) fail(what + " must be an integer");
    return j.get<Index>();
  }

  VectorXd vector(const json& j, const std::string& what,
                  std::optional<Index> expected = std::nullopt) const {
    if (!j.is_array()) fail(what + " must be an array");
    VectorXd v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
      v(static_cast<Index>(i)) = number(j[i], what + "[" + std::to_string(i) + "]");
    }
    if (expected && v.size() != *expected) {
      fail(what + " has " + std::to_string(v.size()) + " entries, expected " +
           std::to_string(*expected));
    }
    return v;
  }

  VectorXd field_vector(const json& obj, const char* key,
                        std::optional<Index> expected = std::nullopt) const {
    return vector(require(obj, key), key, expected);
  }

  std::optional<VectorXd> optional_vector(const json& obj, const char* key,
                                          std::optional<Index> expected) const {
    if (!has(obj, key)) return std::nullopt;
    return vector(obj.at(key), key, expected);
  }

  ConeStructure blocks(const json& j) const {
    if (!j.is_array() || j.empty()) fail("blocks must be a non-empty array");
    std::vector<Block> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const json& b = j[i];
      const std::string where = "blocks[" + std::to_string(i) + "]";
      if (!b.is_object()) fail(where + " must be an object");
      const json& t = require(b, "type");
      if (!t.is_string()) fail(where + ".type must be a string");
      const std::string type = t.get<std::string>();
      if (type == "halfline") {
        if (has(b, "dim") && integer(b.at("dim"), where + ".dim") != 1) {
          fail(where + ": a halfline has dim 1");
        }
        out.push_back(Block::half_line());
      } else if (type == "soc") {
        const Index d = integer(require(b, "dim"), where + ".dim");
        if (d < 2) fail(where + ": soc dim must be >= 2, got " + std::to_string(d));
        out.push_back(Block::second_order(d));
      } else {
        fail(where + ": unknown block type \"" + type + "\"");
      }
    }
    return ConeStructure(std::move(out));
  }

  SolverStats stats(const json& j) const {
    SolverStats s;
    if (!j.is_object()) fail("stats must be an object");
    s.bp_calls = integer(require(j, "bp_calls"), "stats.bp_calls");
    s.bp_iterations = integer(require(j, "bp_iterations"), "stats.bp_iterations");
    s.max_bp_iterations = integer(require(j, "max_bp_iterations"), "stats.max_bp_iterations");
    s.outer_iterations = integer(require(j, "outer_iterations"), "stats.outer_iterations");
    s.min_progress = number(require(j, "min_progress"), "stats.min_progress");
    const json& cuts = require(j, "cuts_per_block");
    if (!cuts.is_array()) fail("stats.cuts_per_block must be an array");
    for (const json& c : cuts) s.cuts_per_block.push_back(integer(c, "stats.cuts_per_block"));
    const VectorXd ledger = vector(require(j, "ledger"), "stats.ledger");
    s.ledger.assign(ledger.data(), ledger.data() + ledger.size());
    return s;
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  json root_;
};

SolveStatus parse_status(const Reader& r, const json& j) {
  if (!j.is_string()) r.fail("status must be a string");
  const std::string s = j.get<std::string>();
  for (SolveStatus st :
       {SolveStatus::PrimalInterior, SolveStatus::DualNonzero, SolveStatus::NoEpsInterior}) {
    if (s == to_string(st)) return st;
  }
  r.fail("unknown status \"" + s + "\"");
}

}  // namespace

StandardSocp Instance::socp() const {
  if (!is_socp()) throw Error(ErrorCode::InvalidArgument, "instance has no b and c");
  StandardSocp p{a, *b, *c, cones};
  p.validate();
  return p;
}

Certificate make_certificate(const SolveResult& r, double epsilon) {
  Certificate c;
  c.status = r.status();
  c.epsilon = epsilon;
  c.stats = r.stats;
  if (const auto* p = std::get_if<PrimalResult>(&r.outcome)) {
    c.x = p->x;
  } else if (const auto* d = std::get_if<DualResult>(&r.outcome)) {
    c.s = d->s;
    c.u = d->u;
  } else {
    const auto& n = std::get<NoEpsInterior>(r.outcome);
    c.block = n.k;
    c.v_k = n.v_k;
  }
  return c;
}

std::string serialize_instance(const Instance& inst) {
  if (inst.a.cols() != inst.cones.dim()) {
    throw Error(ErrorCode::InvalidArgument, "A does not match the cone dimension");
  }
  ObjectWriter w;
  w.field("version", json(kFormatVersion).dump());
  w.field("m", std::to_string(inst.a.rows()));
  w.field("blocks", blocks_json(inst.cones));
  w.field("A", matrix_json(inst.a));
  if (inst.b) w.field("b", vec(*inst.b));
  if (inst.c) w.field("c", vec(*inst.c));
  if (!inst.witness.empty()) {
    ObjectWriter ww;
    if (inst.witness.x) ww.field("x", vec(*inst.witness.x));
    if (inst.witness.s) ww.field("s", vec(*inst.witness.s));
    if (inst.witness.u) ww.field("u", vec(*inst.witness.u));
    w.field("witness", ww.finish("  "));
  }
  return w.finish() + "\n";
}

Instance parse_instance(const std::string& text, const std::string& source) {
  Reader r(text, source);
  const json& root = r.root();
  Instance inst;
  const Index m = r.integer(r.require(root, "m"), "m");
  if (m < 0) r.fail("m must be >= 0");
  inst.cones = r.blocks(r.require(root, "blocks"));
  const Index n = inst.cones.dim();
  const VectorXd flat = r.field_vector(root, "A", m * n);
  inst.a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      flat.data(), m, n);
  if (!inst.a.allFinite()) r.fail("A has non-finite entries");
  inst.b = r.optional_vector(root, "b", m);
  inst.c = r.optional_vector(root, "c", n);
  if (r.has(root, "witness")) {
    const json& w = root.at("witness");
    if (!w.is_object()) r.fail("witness must be an object");
    inst.witness.x = r.optional_vector(w, "x", n);
    inst.witness.s = r.optional_vector(w, "s", n);
    inst.witness.u = r.optional_vector(w, "u", m);
  }
  return inst;
}

std::string serialize_certificate(const Certificate& cert) {
  ObjectWriter w;
  w.field("version", json(kFormatVersion).dump());
  w.field("status", json(to_string(cert.status)).dump());
  switch (cert.status) {
    case SolveStatus::PrimalInterior:
      w.field("x", vec(cert.x));
      break;
    case SolveStatus::DualNonzero:
      w.field("s", vec(cert.s));
      if (cert.u.size() > 0) w.field("u", vec(cert.u));
      break;
    case SolveStatus::NoEpsInterior:
      w.field("block", std::to_string(cert.block));
      w.field("v_k", num(cert.v_k));
      break;
  }
  w.field("epsilon", num(cert.epsilon));
  w.field("stats", stats_json(cert.stats));
  return w.finish() + "\n";
}

Certificate parse_certificate(const std::string& text, const std::string& source) {
  Reader r(text, source);
  const json& root = r.root();
  Certificate c;
  c.status = parse_status(r, r.require(root, "status"));
  switch (c.status) {
    case SolveStatus::PrimalInterior:
      c.x = r.field_vector(root, "x");
      break;
    case SolveStatus::DualNonzero:
      c.s = r.field_vector(root, "s");
      if (r.has(root, "u")) c.u = r.field_vector(root, "u");
      break;
    case SolveStatus::NoEpsInterior:
      c.block = r.integer(r.require(root, "block"), "block");
      c.v_k = r.number(r.require(root, "v_k"), "v_k");
      break;
  }
  c.epsilon = r.number(r.require(root, "epsilon"), "epsilon");
  c.stats = r.stats(r.require(root, "stats"));
  return c;
}

std::string serialize_phase_result(const PhaseResult& p) {
  ObjectWriter w;
  w.field("version", json(kFormatVersion).dump());
  w.field("status", "\"socp_solution\"");
  w.field("phase", std::to_string(p.phase));
  w.field("t", num(p.t));
  w.field("x", vec(p.x));
  w.field("y", vec(p.y));
  w.field("s", vec(p.s));
  w.field("gap", num(p.gap));
  w.field("eps_hat", num(p.eps_hat));
  w.field("M", num(p.m));
  w.field("cond_bound", num(p.cond_bound));
  w.field("primal_residual", num(p.primal_residual));
  w.field("dual_residual", num(p.dual_residual));
  w.field("stats", stats_json(p.stats));
  return w.finish() + "\n";
}

PhaseResult parse_phase_result(const std::string& text, const std::string& source) {
  Reader r(text, source);
  const json& root = r.root();
  const json& st = r.require(root, "status");
  if (!st.is_string() || st.get<std::string>() != "socp_solution") {
    r.fail("status must be \"socp_solution\"");
  }
  PhaseResult p;
  p.phase = static_cast<int>(r.integer(r.require(root, "phase"), "phase"));
  p.t = r.number(r.require(root, "t"), "t");
  p.x = r.field_vector(root, "x");
  p.y = r.field_vector(root, "y");
  p.s = r.field_vector(root, "s", p.x.size());
  p.gap = r.number(r.require(root, "gap"), "gap");
  p.eps_hat = r.number(r.require(root, "eps_hat"), "eps_hat");
  p.m = r.number(r.require(root, "M"), "M");
  p.cond_bound = r.number(r.require(root, "cond_bound"), "cond_bound");
  p.primal_residual = r.number(r.require(root, "primal_residual"), "primal_residual");
  p.dual_residual = r.number(r.require(root, "dual_residual"), "dual_residual");
  p.stats = r.stats(r.require(root, "stats"));
  return p;
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, path + ": cannot open for writing");
  out << text;
  if (!out) throw Error(ErrorCode::InvalidArgument, path + ": write failed");
}

Instance read_instance(const std::string& path) { return parse_instance(read_text(path), path); }

Certificate read_certificate(const std::string& path) {
  return parse_certificate(read_text(path), path);
}

VerifyReport verify_certificate(const Instance& inst, const Certificate& cert, double tol) {
  switch (cert.status) {
    case SolveStatus::PrimalInterior:
      return verify_primal(inst.a, inst.cones, cert.x, tol);
    case SolveStatus::DualNonzero:
      return verify_dual(inst.a, inst.cones, cert.s, cert.u, tol);
    case SolveStatus::NoEpsInterior:
      return verify_no_eps(inst.cones, cert.block, cert.v_k, cert.epsilon);
  }
  VerifyReport rep;
  rep.fail("unknown status");
  return rep;
}

}  // namespace socrescale
