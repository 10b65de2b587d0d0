#pragma once

#include <string>
#include <string_view>

#include "ugkit/core.hpp"
#include "ugkit/ultragraph.hpp"

namespace ugkit {

// .ug documents, line oriented, '#' starts a comment:
//
//   ultragraph NAME
//   vertices: v w x
//   ray: t
//   edge e: v -> { v w } + ray(t) \ { t1 }
//   family g at v: prefix [ { w } ] cycle [ { v } { x } ]
//
// Syntax errors and validation errors are thrown as ValidationError with
// line and column.
RawUltragraph parse_raw(std::string_view text);
Ultragraph parse_document(std::string_view text);

// A set in document syntax, e.g. "{ u } + ray(t) \ { t1 }".
VertexSet parse_set(const Universe& u, std::string_view text);

// Canonical text; parse_document(print_document(g)) rebuilds g. Throws
// Unsupported for ultragraphs with tails, which have no document syntax.
std::string print_document(const Ultragraph& g);

// .mat files: a line with n, an optional `labels: a b ...` line, then n rows
// of space separated 0/1 entries.
Matrix01 parse_matrix(std::string_view text);
std::string print_matrix(const Matrix01& a);

// Graph files: optional `graph NAME`, `vertices: a b ...`, and lines
// `edge x: a -> b`.
DirectedGraph parse_graph(std::string_view text);
std::string print_graph(const DirectedGraph& h);

// One arrow per (edge, range vertex) pair labeled by the edge. A cofinite
// part of a range is drawn as a single arrow to a node standing for the ray.
// Families are drawn up to their presentation span.
std::string to_dot(const Ultragraph& g);

}  // namespace ugkit
