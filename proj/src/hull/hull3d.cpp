#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "sphull/error.hpp"
#include "sphull/hull/predicates.hpp"
#include "sphull/hull_engine.hpp"

namespace sphull {

namespace {

using hull::orient3d;

struct Face {
    std::array<int, 3> v;
    std::array<int, 3> nb;  // nb[i] shares edge (v[i], v[i+1])
    std::vector<int> outside;
    bool alive = true;
};

double plane_dist(const PointCloud& c, const Face& f, int p) {
    const double* a = c.row(f.v[0]);
    const double* b = c.row(f.v[1]);
    const double* d = c.row(f.v[2]);
    const double* x = c.row(p);
    const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    const double w[3] = {d[0] - a[0], d[1] - a[1], d[2] - a[2]};
    const double q[3] = {x[0] - a[0], x[1] - a[1], x[2] - a[2]};
    return q[0] * (u[1] * w[2] - u[2] * w[1]) + q[1] * (u[2] * w[0] - u[0] * w[2]) + q[2] * (u[0] * w[1] - u[1] * w[0]);
}

class QuickHull {
public:
    explicit QuickHull(const PointCloud& c) : c_(c) {}

    int above(const Face& f, int p) const {
        return orient3d(c_.row(f.v[0]), c_.row(f.v[1]), c_.row(f.v[2]), c_.row(p));
    }

    void build() {
        init_simplex();
        std::vector<int> stack;
        for (int i = 0; i < static_cast<int>(faces_.size()); ++i)
            if (!faces_[i].outside.empty()) stack.push_back(i);
        std::vector<int> visible, horizon_face, horizon_edge, fresh, orphans;
        while (!stack.empty()) {
            const int fi = stack.back();
            stack.pop_back();
            if (!faces_[fi].alive || faces_[fi].outside.empty()) continue;
            int p = faces_[fi].outside.front();
            double best = -1;
            for (int q : faces_[fi].outside) {
                const double dq = plane_dist(c_, faces_[fi], q);
                if (dq > best) {
                    best = dq;
                    p = q;
                }
            }
            // visible region by flood fill
            visible.clear();
            horizon_face.clear();
            horizon_edge.clear();
            faces_[fi].alive = false;
            visible.push_back(fi);
            for (std::size_t k = 0; k < visible.size(); ++k) {
                const Face& f = faces_[visible[k]];
                for (int e = 0; e < 3; ++e) {
                    const int g = f.nb[e];
                    if (!faces_[g].alive) continue;
                    if (above(faces_[g], p) > 0) {
                        faces_[g].alive = false;
                        visible.push_back(g);
                    } else {
                        horizon_face.push_back(visible[k]);
                        horizon_edge.push_back(e);
                    }
                }
            }
            // new faces on horizon edges
            fresh.clear();
            for (std::size_t h = 0; h < horizon_face.size(); ++h) {
                const int e = horizon_edge[h];
                const int a = faces_[horizon_face[h]].v[e], b = faces_[horizon_face[h]].v[(e + 1) % 3];
                const int nbr = faces_[horizon_face[h]].nb[e];
                Face nf;
                nf.v = {a, b, p};
                nf.nb = {nbr, -1, -1};
                const int id = add_face(std::move(nf));
                Face& nface = faces_[nbr];
                for (int k = 0; k < 3; ++k)
                    if (nface.v[k] == b && nface.v[(k + 1) % 3] == a) nface.nb[k] = id;
                fresh.push_back(id);
            }
            // stitch: (a,b,p) meets (b,x,p) across (b,p) and (y,a,p) across (p,a)
            for (int id : fresh) {
                Face& f = faces_[id];
                for (int jd : fresh) {
                    if (faces_[jd].v[0] == f.v[1]) f.nb[1] = jd;
                    if (faces_[jd].v[1] == f.v[0]) f.nb[2] = jd;
                }
                if (f.nb[1] < 0 || f.nb[2] < 0)
                    fail(ErrorKind::Degeneracy, "hull3d: horizon is not a simple cycle; perturb the input");
            }
            orphans.clear();
            for (int vi : visible) {
                for (int q : faces_[vi].outside)
                    if (q != p) orphans.push_back(q);
                faces_[vi].outside.clear();
                faces_[vi].outside.shrink_to_fit();
            }
            for (int q : orphans) {
                for (int id : fresh) {
                    if (above(faces_[id], q) > 0) {
                        faces_[id].outside.push_back(q);
                        break;
                    }
                }
            }
            for (int id : fresh)
                if (!faces_[id].outside.empty()) stack.push_back(id);
        }
    }

    HullStats stats() const {
        HullStats s;
        std::vector<std::vector<int>> incident(c_.n);
        for (int i = 0; i < static_cast<int>(faces_.size()); ++i) {
            const Face& f = faces_[i];
            if (!f.alive) continue;
            ++s.f_n;
            for (int k = 0; k < 3; ++k) incident[f.v[k]].push_back(i);
            const double* a = c_.row(f.v[0]);
            const double* b = c_.row(f.v[1]);
            const double* d = c_.row(f.v[2]);
            const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
            const double w[3] = {d[0] - a[0], d[1] - a[1], d[2] - a[2]};
            const double cr[3] = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
            s.area += 0.5 * std::sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]);
            const double q[3] = {a[0] - o_[0], a[1] - o_[1], a[2] - o_[2]};
            s.volume += (q[0] * cr[0] + q[1] * cr[1] + q[2] * cr[2]) / 6.0;
        }
        s.volume = std::fabs(s.volume);
        for (std::size_t v = 0; v < c_.n; ++v) {
            if (incident[v].empty()) continue;
            // a vertex whose incident facets are all coplanar is not extreme
            const Face& f0 = faces_[incident[v][0]];
            bool flat = true;
            for (int fi : incident[v]) {
                for (int k = 0; k < 3 && flat; ++k)
                    if (above(f0, faces_[fi].v[k]) != 0) flat = false;
                if (!flat) break;
            }
            if (!flat) s.vertices.push_back(v);
        }
        s.v_n = s.vertices.size();
        return s;
    }

private:
    int add_face(Face f) {
        faces_.push_back(std::move(f));
        return static_cast<int>(faces_.size()) - 1;
    }

    void init_simplex() {
        const int n = static_cast<int>(c_.n);
        if (n < 4) fail(ErrorKind::Degeneracy, "hull3d: fewer than 4 points; the hull is flat");
        int i0 = 0, i1 = 0;
        for (int i = 1; i < n; ++i) {
            if (c_.row(i)[0] < c_.row(i0)[0]) i0 = i;
            if (c_.row(i)[0] > c_.row(i1)[0]) i1 = i;
        }
        auto same = [&](int a, int b) {
            return std::equal(c_.row(a), c_.row(a) + 3, c_.row(b));
        };
        if (same(i0, i1)) {
            for (int i = 0; i < n; ++i)
                if (!same(i, i0)) i1 = i;
            if (same(i0, i1)) fail(ErrorKind::Degeneracy, "hull3d: all points coincide");
        }
        // farthest from the line
        int i2 = -1;
        double best = -1;
        const double* a = c_.row(i0);
        const double* b = c_.row(i1);
        const double ab[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        for (int i = 0; i < n; ++i) {
            const double* p = c_.row(i);
            const double ap[3] = {p[0] - a[0], p[1] - a[1], p[2] - a[2]};
            const double cr[3] = {ab[1] * ap[2] - ab[2] * ap[1], ab[2] * ap[0] - ab[0] * ap[2],
                                  ab[0] * ap[1] - ab[1] * ap[0]};
            const double d2 = cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2];
            if (d2 > best) {
                best = d2;
                i2 = i;
            }
        }
        if (!(best > 0)) fail(ErrorKind::Degeneracy, "hull3d: points are collinear");
        int i3 = -1;
        best = -1;
        Face probe;
        probe.v = {i0, i1, i2};
        for (int i = 0; i < n; ++i) {
            const double dd = std::fabs(plane_dist(c_, probe, i));
            if (dd > best) {
                best = dd;
                i3 = i;
            }
        }
        if (above(probe, i3) == 0) {
            i3 = -1;
            for (int i = 0; i < n && i3 < 0; ++i)
                if (above(probe, i) != 0) i3 = i;
            if (i3 < 0) fail(ErrorKind::Degeneracy, "hull3d: points are coplanar; perturb the input");
        }
        if (above(probe, i3) > 0) std::swap(i1, i2);  // make i3 lie below (i0,i1,i2)
        for (int k = 0; k < 3; ++k) o_[k] = 0.25 * (c_.row(i0)[k] + c_.row(i1)[k] + c_.row(i2)[k] + c_.row(i3)[k]);
        // faces oriented outward: the opposite vertex is below each
        add_face({{i0, i1, i2}, {3, 2, 1}, {}});
        add_face({{i0, i3, i1}, {2, 3, 0}, {}});
        add_face({{i1, i3, i2}, {1, 3, 0}, {}});
        add_face({{i0, i2, i3}, {0, 2, 1}, {}});
        fix_simplex_neighbors();
        for (int i = 0; i < n; ++i) {
            if (i == i0 || i == i1 || i == i2 || i == i3) continue;
            for (int f = 0; f < 4; ++f) {
                if (above(faces_[f], i) > 0) {
                    faces_[f].outside.push_back(i);
                    break;
                }
            }
        }
    }

    void fix_simplex_neighbors() {
        for (int f = 0; f < 4; ++f)
            for (int e = 0; e < 3; ++e) {
                const int a = faces_[f].v[e], b = faces_[f].v[(e + 1) % 3];
                for (int g = 0; g < 4; ++g) {
                    if (g == f) continue;
                    for (int k = 0; k < 3; ++k)
                        if (faces_[g].v[k] == b && faces_[g].v[(k + 1) % 3] == a) faces_[f].nb[e] = g;
                }
            }
    }

    const PointCloud& c_;
    std::vector<Face> faces_;
    double o_[3] = {0, 0, 0};
};

}  // namespace

HullStats hull3d(const PointCloud& c) {
    if (c.d != 3) fail(ErrorKind::Validation, "hull3d needs d=3");
    QuickHull q(c);
    q.build();
    return q.stats();
}

HullStats hull_stats(const PointCloud& c) {
    if (c.d == 2) return hull2d(c);
    if (c.d == 3) return hull3d(c);
    return hull_bruteforce(c);
}

}  // namespace sphull
