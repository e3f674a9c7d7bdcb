#pragma once

#include "rsym/presentation.hpp"
#include "rsym/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rsym {

enum class FaceKind : std::uint8_t { External, Green, Red };

// Coloured diagram as a combinatorial map on the sphere. Every edge is two
// half-edges; next() runs around a face clockwise, so a face's label is the
// labels of its half-edges in next order. Face 0 is the external face.
// The twin of a half-edge labelled a is labelled sigma(a).
struct ColouredDiagram {
    std::vector<Elem> label;
    std::vector<int> twin, next, face;
    std::vector<FaceKind> kind;  // per face

    // derived by rebuild()
    std::vector<int> prev, origin;
    std::vector<std::vector<int>> face_edges;  // half-edges of each face in next order
    int n_vertices = 0;

    int half_edges() const { return static_cast<int>(label.size()); }
    int faces() const { return static_cast<int>(kind.size()); }
    int internal_faces() const { return faces() - 1; }
    int edges() const { return half_edges() / 2; }
    Word face_word(int f) const;
    Word boundary_word() const { return face_word(0); }
    void rebuild();
};

// A disc carrying one internal face with label w.
ColouredDiagram single_face(const Word& w, FaceKind k, const PregroupTable& t);

// Glue a new face along the k external half-edges starting at h (in next
// order of the external face). w is the new face's label read from h; its
// first k letters must equal those half-edge labels.
ColouredDiagram attach_face(const ColouredDiagram& d, int h, int k, const Word& w, FaceKind kind, const PregroupTable& t);

// Empty when the map is a well-formed planar diagram over pres.
std::string structural_error(const ColouredDiagram& d, const PregroupPresentation& pres);

enum class DiagramVerdict {
    Ok,
    Structural,
    BoundaryNotReduced,
    NotSigmaReduced,
    NotSemiPReduced,
    NotGreenRich,
    BlobSubwordTrivial,
};
const char* verdict_name(DiagramVerdict v);

struct DiagramCheck {
    DiagramVerdict verdict = DiagramVerdict::Ok;
    std::string detail;
    bool ok() const { return verdict == DiagramVerdict::Ok; }
};

DiagramCheck validate_diagram(const ColouredDiagram& d, const PregroupPresentation& pres);

// Mirror or P-equal gluing between internal faces f and g; used both by
// validation and to prune enumeration early. Checks every common
// consolidated edge of f with g.
DiagramVerdict pair_reduction(const ColouredDiagram& d, int f, int g, const PregroupTable& t);

struct RedBlob {
    std::vector<int> faces;
    int area = 0;
    int boundary_length = 0;
    bool simply_connected = false;
    bool all_vertices_on_boundary = false;
    std::vector<std::vector<int>> walks;  // blob-side half-edges of each boundary walk
    int internal_boundary = 0;           // boundary edges not on the diagram boundary
};

std::vector<RedBlob> find_red_blobs(const ColouredDiagram& d);

struct VertexDonation {
    int vertex, face;
    Rational chi;
    int vg, x;  // green degree, external incidences
};
struct BlobDonation {
    int blob, face;
    Rational chi;
};

struct CurvatureMap {
    std::vector<Rational> vertex, half_edge, face;
    std::vector<Rational> blob_curvature;  // beta(B)
    std::vector<VertexDonation> vertex_donations;
    std::vector<BlobDonation> blob_donations;
    Rational total() const;
};

CurvatureMap compute_rsym_curvature(const ColouredDiagram& d);

// Faces with at least one edge on the diagram boundary.
std::vector<char> boundary_faces(const ColouredDiagram& d);

// Invariants every diagram in the class must satisfy under the scheme.
struct DiagramAudit {
    bool conserved = true;           // total curvature is exactly 1
    bool graph_identity = true;      // green edge-side count identity
    bool blob_lengths = true;        // l = t + 2 or l <= t
    bool vertex_formula = true;      // vertex shares equal (2 - v_G) / (2 (v_G - x))
    int boundary_face_excess = 0;    // boundary green faces above 1/2 (area > 1)
    int nonboundary_green = 0;       // internal green faces off the boundary
    int curvature_violations = 0;    // of those, kappa > -eps (only with eps)
    bool ok() const { return conserved && graph_identity && blob_lengths && vertex_formula && curvature_violations == 0; }
};

DiagramAudit audit_diagram(const ColouredDiagram& d, const CurvatureMap& k, const Rational* eps);

struct EnumerationLimits {
    int ceiling_faces = 4;
    int ceiling_boundary = 40;
};

// All diagrams in the class the curvature scheme runs on, up to isomorphism,
// with at most max_faces internal faces, built by gluing one face at a time
// along a boundary arc. Throws std::invalid_argument above the ceiling.
std::vector<ColouredDiagram> enumerate_diagrams(const PregroupPresentation& pres, int max_faces, int max_boundary,
                                                const EnumerationLimits& lim = {});

// Isomorphism invariant of the map, labels and colours.
std::vector<int> canonical_code(const ColouredDiagram& d);

std::string dump_diagram(const ColouredDiagram& d, const PregroupTable& t);

} // namespace rsym
