#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace toro {

struct V {
  int i = 0, j = 0;  // 1-based column i, row j
  friend bool operator==(const V&, const V&) = default;
};

// The r x s toroidal grid triangulation whose column wraparound is shifted by
// t rows. Vertices are (i,j), 1 <= i <= r, 1 <= j <= s; flat = (i-1)*s+(j-1).
// Neighbor slots are fixed: 0 up (i,j+1), 1 down (i,j-1),
// 2 left0 (i-1,j), 3 left1 (i-1,j+1), 4 right0 (i+1,j), 5 right1 (i+1,j-1),
// where stepping past column 1 adds t to the row and past column r subtracts t.
// For r = 1 both wraps apply, giving the circulant with offsets +-t, +-(t+1).
struct Torus {
  int r = 0, s = 0, t = 0, n = 0;
  std::vector<std::array<int, 6>> adj;
  bool has_loops = false, has_multi = false;

  bool simple() const { return !has_loops && !has_multi; }
  int flat(int i, int j) const { return (i - 1) * s + (j - 1); }
  V at(int f) const { return {f / s + 1, f % s + 1}; }
  int wrap(long long i, long long j) const {
    long long im = (i - 1) % r;
    if (im < 0) im += r;
    long long jm = (j - 1) % s;
    if (jm < 0) jm += s;
    return static_cast<int>(im) * s + static_cast<int>(jm);
  }
  const std::array<int, 6>& nbrs(int f) const { return adj[f]; }
  int up(int f) const { return adj[f][0]; }
  int down(int f) const { return adj[f][1]; }
  int left0(int f) const { return adj[f][2]; }
  int left1(int f) const { return adj[f][3]; }
  int right0(int f) const { return adj[f][4]; }
  int right1(int f) const { return adj[f][5]; }
};

Torus build_torus(int r, int s, int t);

// Cylinder: columns 1..r of the t = 0 torus pattern with no column wraparound.
// Exterior columns 1 and r have degree 4, interior columns degree 6.
// Neighbor order per vertex: up, down, then left pair (i>1), then right pair (i<r).
struct Cylinder {
  int r = 0, s = 0, n = 0;
  std::vector<std::vector<int>> adj;
  int flat(int i, int j) const { return (i - 1) * s + (j - 1); }
  V at(int f) const { return {f / s + 1, f % s + 1}; }
  int wrap_row(long long j) const {
    long long jm = (j - 1) % s;
    if (jm < 0) jm += s;
    return static_cast<int>(jm) + 1;
  }
};

Cylinder build_cylinder(int r, int s);

std::vector<int> column(const Torus& G, int i);
std::vector<int> column(const Cylinder& C, int i);

// (i,j) -> (r-i+1, s-j+1); an involutive automorphism that swaps the left and
// right neighbor pairs.
int flip_automorphism(const Torus& G, int f);

struct CircuitLengths {
  int vertical = 0, horizontal = 0, diagonal = 0;
  friend bool operator==(const CircuitLengths&, const CircuitLengths&) = default;
};
CircuitLengths normal_circuit_lengths(const Torus& G);

// A tuple (r,s,t) known isomorphic to the input graph, with the witness
// bijection: to_orig[flat in the (r,s,t) labeling] = flat in the input labeling.
struct IsoTuple {
  int r = 0, s = 0, t = 0;
  std::vector<int> to_orig;
};

std::vector<IsoTuple> isomorphic_tuples(const Torus& G);
std::vector<IsoTuple> isomorphic_tuples(int r, int s, int t);

enum class SolverCase { Case1, Case2, Case3, IdenticalOnly, Unsupported };

struct GraphClass {
  bool has_loops = false;
  bool has_multi_edges = false;
  bool is_three_chromatic = false;
  SolverCase solver_case = SolverCase::Unsupported;
  std::string unsupported_reason;
  // For Case1/Case2/Case3: the representation the solver should run on.
  // Absent when the input tuple itself is already in the required form.
  std::optional<IsoTuple> rebase;
};

GraphClass classify(const Torus& G);

const char* to_string(SolverCase c);

}  // namespace toro
