// Copyright 2026 The svi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text form of a Projector.
//
//   set      := '(' head attr* set* ')'
//   attr     := key '=' value
//   value    := number | '[' number (',' number)* ']' | '[' ']'
//   number   := any strtod-parsable token, plus inf / -inf / nan
//
// Heads and their attributes:
//   (box lo=[..] hi=[..])
//   (nonneg n=N)
//   (halfspace c=[..] b=B)                 c^T y <= b
//   (hyperplane a=[..] b=B)                a^T y  = b
//   (simplex n=N r=R)
//   (halfspace-meet-hyperplane (halfspace ..) (hyperplane ..))
//   (product n=N (block idx=[..] <set>) ...)
//   (dykstra tol=T max_iters=K <set> <set> ...)
//   (polyhedron n=N (halfspace ..)* (hyperplane ..)*)
//
// Numbers are written with 17 significant digits, so parse(print(p))
// reproduces every finite double bit for bit.

#ifndef SVI_SET_DESCRIPTOR_HPP_
#define SVI_SET_DESCRIPTOR_HPP_

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "svi/common.hpp"
#include "svi/projector.hpp"

namespace svi {

class ParseError : public Error {
 public:
  using Error::Error;
};

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(std::string_view tok) {
  const std::string s(tok);
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return kNaN;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError("not a number: '" + s + "'");
  }
  return v;
}

namespace detail {

inline std::string format_vector(const Vector& v) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out + "]";
}

inline void print_set(const Projector& p, std::string& out);

struct PrintVisitor {
  std::string& out;
  void operator()(const Box& b) const {
    out += "(box lo=" + format_vector(b.lo) + " hi=" + format_vector(b.hi) + ")";
  }
  void operator()(const Nonneg& s) const { out += "(nonneg n=" + std::to_string(s.n) + ")"; }
  void operator()(const Halfspace& h) const {
    out += "(halfspace c=" + format_vector(h.c) + " b=" + format_double(h.b) + ")";
  }
  void operator()(const Hyperplane& h) const {
    out += "(hyperplane a=" + format_vector(h.a) + " b=" + format_double(h.b) + ")";
  }
  void operator()(const Simplex& s) const {
    out += "(simplex n=" + std::to_string(s.n) + " r=" + format_double(s.radius) + ")";
  }
  void operator()(const HalfspaceMeetHyperplane& s) const {
    out += "(halfspace-meet-hyperplane ";
    (*this)(s.halfspace);
    out += ' ';
    (*this)(s.hyperplane);
    out += ')';
  }
  void operator()(const Product& p) const {
    out += "(product n=" + std::to_string(p.n);
    for (std::size_t b = 0; b < p.parts.size(); ++b) {
      out += " (block idx=[";
      for (std::size_t k = 0; k < p.indices[b].size(); ++k) {
        if (k) out += ',';
        out += std::to_string(p.indices[b][k]);
      }
      out += "] ";
      print_set(p.parts[b], out);
      out += ')';
    }
    out += ')';
  }
  void operator()(const DykstraIntersection& d) const {
    out += "(dykstra tol=" + format_double(d.tol) + " max_iters=" + std::to_string(d.max_iters);
    for (const auto& s : d.sets) {
      out += ' ';
      print_set(s, out);
    }
    out += ')';
  }
  void operator()(const Polyhedron& p) const {
    const Index n = std::max(p.a_in.cols(), p.a_eq.cols());
    out += "(polyhedron n=" + std::to_string(n);
    for (Index i = 0; i < p.a_in.rows(); ++i) {
      out += ' ';
      (*this)(Halfspace{p.a_in.row(i).transpose(), p.b_in[i]});
    }
    for (Index i = 0; i < p.a_eq.rows(); ++i) {
      out += ' ';
      (*this)(Hyperplane{p.a_eq.row(i).transpose(), p.b_eq[i]});
    }
    out += ')';
  }
};

inline void print_set(const Projector& p, std::string& out) {
  std::visit(PrintVisitor{out}, p.variant());
}

// Parsed s-expression node before it is turned into a Projector.
struct SNode {
  std::string head;
  std::map<std::string, std::string> attrs;
  std::vector<SNode> children;
};

class SParser {
 public:
  explicit SParser(std::string_view text) : s_(text) {}

  SNode parse_root() {
    SNode node = parse_node();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after set descriptor");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("set descriptor: " + msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string read_atom() {
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '=') break;
      ++pos_;
    }
    if (start == pos_) fail("expected a token");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string read_value() {
    if (pos_ < s_.size() && s_[pos_] == '[') {
      const std::size_t close = s_.find(']', pos_);
      if (close == std::string_view::npos) fail("unterminated '['");
      std::string v(s_.substr(pos_, close - pos_ + 1));
      pos_ = close + 1;
      return v;
    }
    return read_atom();
  }

  SNode parse_node() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '(') fail("expected '('");
    ++pos_;
    skip_ws();
    SNode node;
    node.head = read_atom();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated '('");
      if (s_[pos_] == ')') {
        ++pos_;
        return node;
      }
      if (s_[pos_] == '(') {
        node.children.push_back(parse_node());
        continue;
      }
      std::string key = read_atom();
      if (pos_ >= s_.size() || s_[pos_] != '=') fail("expected '=' after '" + key + "'");
      ++pos_;
      if (node.attrs.count(key)) fail("duplicate attribute '" + key + "'");
      node.attrs[key] = read_value();
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::vector<double> parse_number_list(const std::string& v) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    throw ParseError("expected a bracketed list, got '" + v + "'");
  }
  std::vector<double> out;
  const std::string body = v.substr(1, v.size() - 2);
  std::size_t start = 0;
  if (body.find_first_not_of(" \t\n") == std::string::npos) return out;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    std::string tok = body.substr(start, comma - start);
    const auto a = tok.find_first_not_of(" \t\n");
    const auto b = tok.find_last_not_of(" \t\n");
    if (a == std::string::npos) throw ParseError("empty list element in '" + v + "'");
    out.push_back(parse_double(tok.substr(a, b - a + 1)));
    start = comma + 1;
  }
  return out;
}

inline Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

inline const std::string& attr(const SNode& n, const std::string& key) {
  auto it = n.attrs.find(key);
  if (it == n.attrs.end()) throw ParseError("(" + n.head + ") is missing '" + key + "'");
  return it->second;
}

inline void expect_attrs(const SNode& n, std::initializer_list<const char*> allowed) {
  for (const auto& [k, _] : n.attrs) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ParseError("(" + n.head + ") has unknown attribute '" + k + "'");
  }
}

inline Index parse_index(const std::string& v) {
  const double d = parse_double(v);
  if (d < 0 || d != std::floor(d)) throw ParseError("expected a non-negative integer: " + v);
  return static_cast<Index>(d);
}

inline Projector build(const SNode& n);

inline Halfspace build_halfspace(const SNode& n) {
  if (n.head != "halfspace") throw ParseError("expected (halfspace ..), got (" + n.head + ")");
  expect_attrs(n, {"c", "b"});
  return Halfspace{to_vector(parse_number_list(attr(n, "c"))), parse_double(attr(n, "b"))};
}

inline Hyperplane build_hyperplane(const SNode& n) {
  if (n.head != "hyperplane") throw ParseError("expected (hyperplane ..), got (" + n.head + ")");
  expect_attrs(n, {"a", "b"});
  return Hyperplane{to_vector(parse_number_list(attr(n, "a"))), parse_double(attr(n, "b"))};
}

inline Projector build(const SNode& n) {
  const auto no_children = [&] {
    if (!n.children.empty()) throw ParseError("(" + n.head + ") takes no nested sets");
  };
  if (n.head == "box") {
    no_children();
    expect_attrs(n, {"lo", "hi"});
    return Box{to_vector(parse_number_list(attr(n, "lo"))),
               to_vector(parse_number_list(attr(n, "hi")))};
  }
  if (n.head == "nonneg") {
    no_children();
    expect_attrs(n, {"n"});
    return Nonneg{parse_index(attr(n, "n"))};
  }
  if (n.head == "halfspace") {
    no_children();
    return build_halfspace(n);
  }
  if (n.head == "hyperplane") {
    no_children();
    return build_hyperplane(n);
  }
  if (n.head == "simplex") {
    no_children();
    expect_attrs(n, {"n", "r"});
    return Simplex{parse_index(attr(n, "n")), parse_double(attr(n, "r"))};
  }
  if (n.head == "halfspace-meet-hyperplane") {
    expect_attrs(n, {});
    if (n.children.size() != 2) throw ParseError("halfspace-meet-hyperplane needs 2 children");
    return HalfspaceMeetHyperplane{build_halfspace(n.children[0]),
                                   build_hyperplane(n.children[1])};
  }
  if (n.head == "product") {
    expect_attrs(n, {"n"});
    Product p;
    p.n = parse_index(attr(n, "n"));
    for (const auto& block : n.children) {
      if (block.head != "block" || block.children.size() != 1) {
        throw ParseError("product children must be (block idx=[..] <set>)");
      }
      expect_attrs(block, {"idx"});
      std::vector<Index> idx;
      for (double d : parse_number_list(attr(block, "idx"))) {
        if (d < 0 || d != std::floor(d)) throw ParseError("block index must be a natural number");
        idx.push_back(static_cast<Index>(d));
      }
      p.indices.push_back(std::move(idx));
      p.parts.push_back(build(block.children[0]));
    }
    return p;
  }
  if (n.head == "dykstra") {
    expect_attrs(n, {"tol", "max_iters"});
    DykstraIntersection d;
    if (n.attrs.count("tol")) d.tol = parse_double(n.attrs.at("tol"));
    if (n.attrs.count("max_iters")) d.max_iters = static_cast<int>(parse_index(n.attrs.at("max_iters")));
    for (const auto& c : n.children) d.sets.push_back(build(c));
    return d;
  }
  if (n.head == "polyhedron") {
    expect_attrs(n, {"n"});
    const Index dim = parse_index(attr(n, "n"));
    std::vector<Halfspace> hs;
    std::vector<Hyperplane> eqs;
    for (const auto& c : n.children) {
      if (c.head == "halfspace") {
        hs.push_back(build_halfspace(c));
      } else {
        eqs.push_back(build_hyperplane(c));
      }
    }
    Polyhedron p;
    p.a_in.resize(static_cast<Index>(hs.size()), dim);
    p.b_in.resize(static_cast<Index>(hs.size()));
    for (std::size_t i = 0; i < hs.size(); ++i) {
      require_dim("polyhedron halfspace", dim, hs[i].c.size());
      p.a_in.row(static_cast<Index>(i)) = hs[i].c.transpose();
      p.b_in[static_cast<Index>(i)] = hs[i].b;
    }
    p.a_eq.resize(static_cast<Index>(eqs.size()), dim);
    p.b_eq.resize(static_cast<Index>(eqs.size()));
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      require_dim("polyhedron hyperplane", dim, eqs[i].a.size());
      p.a_eq.row(static_cast<Index>(i)) = eqs[i].a.transpose();
      p.b_eq[static_cast<Index>(i)] = eqs[i].b;
    }
    return p;
  }
  throw ParseError("unknown set kind '" + n.head + "'");
}

}  // namespace detail

inline std::string print_set_descriptor(const Projector& p) {
  std::string out;
  detail::print_set(p, out);
  return out;
}

inline Projector parse_set_descriptor(std::string_view text) {
  detail::SParser parser(text);
  return detail::build(parser.parse_root());
}

}  // namespace svi

#endif  // SVI_SET_DESCRIPTOR_HPP_
