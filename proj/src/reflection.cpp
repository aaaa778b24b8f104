#include "siegelarc/reflection.hpp"

#include <algorithm>
#include <cmath>

namespace arc {
namespace {

const double kPi = std::acos(-1.0);

// Span of the two most independent columns of a rank-2 matrix.
Lagrangian planeFromColumns(const Mat4& n) {
    double colNorm[4];
    for (int j = 0; j < 4; ++j) {
        double s = 0;
        for (int i = 0; i < 4; ++i) s += n.at(i, j) * n.at(i, j);
        colNorm[j] = std::sqrt(s);
    }
    const int j1 = static_cast<int>(std::max_element(colNorm, colNorm + 4) - colNorm);
    if (!(colNorm[j1] > 1e-12)) throw Error("eigenplane extraction: zero matrix");
    double u[4];
    for (int i = 0; i < 4; ++i) u[i] = n.at(i, j1) / colNorm[j1];

    int j2 = -1;
    double best = 0;
    double v[4] = {0, 0, 0, 0};
    for (int j = 0; j < 4; ++j) {
        if (j == j1) continue;
        double dot = 0;
        for (int i = 0; i < 4; ++i) dot += n.at(i, j) * u[i];
        double r[4], rn = 0;
        for (int i = 0; i < 4; ++i) {
            r[i] = n.at(i, j) - dot * u[i];
            rn += r[i] * r[i];
        }
        if (rn > best) {
            best = rn;
            j2 = j;
            for (int i = 0; i < 4; ++i) v[i] = r[i];
        }
    }
    if (j2 < 0 || !(best > 1e-18)) throw Error("eigenplane extraction: rank below two");
    std::array<double, 8> basis{};
    for (int i = 0; i < 4; ++i) {
        basis[static_cast<size_t>(2 * i)] = u[i];
        basis[static_cast<size_t>(2 * i + 1)] = v[i];
    }
    return Lagrangian::fromBasis(basis);
}

std::array<Lagrangian, 4> sideQuadruple(const OrderedHexagon& h, int side) {
    const auto& t = h.twelveTuple;
    switch (side) {
        case 2: return {t[2], t[3], t[4], t[5]};
        case 4: return {t[6], t[7], t[8], t[9]};
        case 6: return {t[10], t[11], t[0], t[1]};
        default: throw Error("reflection side index must be 2, 4 or 6");
    }
}

// Direction angle (in the Euclidean tangent plane, ccw from +x) of the
// hyperbolic geodesic leaving a toward b.
double tangentDirection(const H2Point& a, const H2Point& b) {
    const double dx = b.x - a.x;
    const double scale = std::max({1.0, std::abs(a.x), std::abs(b.x), a.y, b.y});
    if (std::abs(dx) <= 1e-12 * scale)
        return b.y > a.y ? 0.5 * kPi : 1.5 * kPi; // vertical geodesic
    const double x0 =
        (b.x * b.x + b.y * b.y - a.x * a.x - a.y * a.y) / (2.0 * dx);
    const double rx = a.x - x0, ry = a.y;
    // Perpendicular to the radius, oriented toward b: increasing x means moving
    // clockwise along the upper semicircle.
    double tx = ry, ty = -rx;
    if (dx < 0) {
        tx = -ry;
        ty = rx;
    }
    return normalizeAngle2Pi(std::atan2(ty, tx));
}

bool samePoint(const H2Point& a, const H2Point& b) {
    const double scale = std::max({1.0, a.y, b.y, std::abs(a.x), std::abs(b.x)});
    return std::abs(a.x - b.x) <= 1e-7 * scale && std::abs(a.y - b.y) <= 1e-7 * scale;
}

} // namespace

// ------------------------------------------------------------- reflections

bool isReflection(const Mat4& m) {
    MapKind kind = MapKind::Symplectic;
    if (spResidual(m, kind) > Tol::get().sympResidual) return false;
    if (kind != MapKind::Antisymplectic) return false;
    return projEqual(m * m, Mat4::identity(), 1e-10);
}

Reflection Reflection::fromMatrix(const Mat4& m) {
    MapKind kind = MapKind::Symplectic;
    if (spResidual(m, kind) > Tol::get().sympResidual || kind != MapKind::Antisymplectic)
        throw NotAntisymplectic("reflection matrix must negate the symplectic form");
    if (!projEqual(m * m, Mat4::identity(), 1e-10))
        throw NotInvolution("reflection matrix must square to +/- identity");
    return Reflection{SpMap::fromMatrix(m)};
}

std::pair<Lagrangian, Lagrangian> fixedLagrangians(const Reflection& r) {
    const Mat4& m = r.map.m;
    const Mat4 sq = m * m;
    const Mat4 id = Mat4::identity();
    if (!projEqual(sq, id, 1e-10))
        throw NotInvolution("map does not square to +/- identity");
    if ((sq + id).norm() < (sq - id).norm())
        throw Error("fixed Lagrangians: map squares to -identity, eigenplanes are complex");
    return {planeFromColumns(m + id), planeFromColumns(m - id)};
}

// -------------------------------------------------------- the parameter set

Mat2 kMatrix(const KElement& k) {
    if (k.idBranch) return Mat2::identity();
    const double c = std::cos(k.theta), s = std::sin(k.theta);
    return {-c, s, s, c}; // flip * rotation(theta)
}

double beta(const KElement& k) {
    return k.idBranch ? kPi : normalizeAngle2Pi(kPi + 2.0 * k.theta);
}

// ---------------------------------------------------------- reflection sets

ReflectionSetDescriptor reflectionSet(const Lagrangian& P, const Lagrangian& X,
                                      const Lagrangian& Y, const Lagrangian& Q) {
    const StandardizedQuad q = mapQuadrupleToStandard(P, X, Y, Q);
    return {q.g, q.degenerate ? ReflectionFamily::FullK : ReflectionFamily::TwoElement};
}

ReflectionSetDescriptor reflectionSetForSide(const OrderedHexagon& h, int side) {
    const auto quad = sideQuadruple(h, side);
    const StandardizedQuad q = mapQuadrupleToStandard(quad[0], quad[1], quad[2], quad[3]);
    const ArcCoordinates a = coordsFromHexagon(h);
    bool degenerate = false;
    if (side == 2) {
        degenerate = a.b.inDiagonal();
    } else if (side == 6) {
        degenerate = a.d.inDiagonal();
    } else {
        const WeylVector img = maleficMap(a.b, a.d, a.alpha1.value_or(0.0),
                                          a.alpha2.value_or(0.0), a.c);
        degenerate = img.inDiagonal();
    }
    return {q.g, degenerate ? ReflectionFamily::FullK : ReflectionFamily::TwoElement};
}

Reflection enumerateReflection(const ReflectionSetDescriptor& d, const KElement& k) {
    const Mat2 K = kMatrix(k);
    const Mat4 r4 = Mat4::fromBlocks(-K, Mat2{}, Mat2{}, K);
    const SpMap std = SpMap::fromMatrix(r4);
    return Reflection{d.conjugator.inverse() * std * d.conjugator};
}

KElement kElementOf(const ReflectionSetDescriptor& d, const Reflection& r) {
    const SpMap conj = d.conjugator * r.map * d.conjugator.inverse();
    const Mat4& m = conj.m;
    const double scale = std::max(1.0, m.norm());
    const Mat2 ul = m.block(0, 0), ur = m.block(0, 1);
    const Mat2 ll = m.block(1, 0), lr = m.block(1, 1);
    const double tolAbs = 1e-8 * scale;
    if (ur.norm() > tolAbs || ll.norm() > tolAbs)
        throw ReflectionNotInSet("conjugated reflection is not block diagonal");
    if ((ul + lr).norm() > tolAbs)
        throw ReflectionNotInSet("conjugated reflection blocks are not opposite");
    const Mat2 K = lr;
    if ((K * K.transpose() - Mat2::identity()).norm() > 1e-8 ||
        (K * K - Mat2::identity()).norm() > 1e-8)
        throw ReflectionNotInSet("block is not an orthogonal involution");

    KElement out;
    if (std::abs(K.b) <= 1e-8 && std::abs(K.c) <= 1e-8 && std::abs(K.a - K.d) <= 1e-8) {
        out = KElement::id();
    } else {
        // K = [[-cos t, sin t], [sin t, cos t]]; the class is t mod pi.
        double theta = std::atan2(K.b, K.d);
        if (theta < 0) theta += kPi;
        if (theta >= kPi) theta -= kPi;
        out = KElement::flip(theta);
    }
    if (d.family == ReflectionFamily::TwoElement && !out.idBranch) {
        if (out.theta < 1e-8 || out.theta > kPi - 1e-8)
            out.theta = 0.0;
        else
            throw ReflectionNotInSet("two-element set holds only the standard and exotic reflections");
    }
    return out;
}

// ------------------------------------------------------ reflecting hexagons

OrderedHexagon reflectHexagon(const OrderedHexagon& h, const Reflection& r, int side) {
    (void)kElementOf(reflectionSetForSide(h, side), r); // membership check

    std::array<Lagrangian, 12> v;
    for (int k = 0; k < 12; ++k)
        v[static_cast<size_t>(k)] =
            actLagrangian(r.map, h.twelveTuple[static_cast<size_t>(((3 - k) % 12 + 12) % 12)]);

    OrderedHexagon out;
    out.twelveTuple = v;
    out.sixTuple = {v[3], v[5], v[7], v[8], v[10], v[0]};
    out.tubes = {RTube::fromEndpoints(v[0], v[3]), RTube::fromEndpoints(v[2], v[5]),
                 RTube::fromEndpoints(v[4], v[7]), RTube::fromEndpoints(v[6], v[9]),
                 RTube::fromEndpoints(v[8], v[11]), RTube::fromEndpoints(v[10], v[1])};
    return out;
}

double attachmentAngle(const OrderedHexagon& h, const Reflection& r, int side) {
    return beta(kElementOf(reflectionSetForSide(h, side), r));
}

double attachmentAngleGeometric(const OrderedHexagon& h, const Reflection& r, int side) {
    if (side != 2 && side != 6)
        throw Error("geometric attachment angle is measured along the distinguished side "
                    "(reflections of sides 2 and 6)");
    const OrderedHexagon img = reflectHexagon(h, r, side);

    const StandardizedQuad q =
        mapQuadrupleToStandard(h.sixTuple[0], h.sixTuple[2], h.sixTuple[3], h.sixTuple[5]);
    const auto pt = [&](const Lagrangian& l) {
        return splitRH(PosDef2(chartValue(actLagrangian(q.g, l)))).second;
    };

    // Chain vertices of both hexagons in the common frame; the reflected
    // hexagon shares the distinguished tube, so its chain lives there too.
    const std::array<H2Point, 4> own = {pt(h.sixTuple[1]), pt(h.sixTuple[2]),
                                        pt(h.sixTuple[3]), pt(h.sixTuple[4])};
    const std::array<H2Point, 4> mir = {pt(img.sixTuple[1]), pt(img.sixTuple[2]),
                                        pt(img.sixTuple[3]), pt(img.sixTuple[4])};

    // United vertex sequence along the two chains. Side 2 attaches the mirror
    // chain before the original one at the A-vertex; side 6 attaches it after,
    // at the D-vertex.
    std::array<H2Point, 7> united;
    int attach;
    if (side == 2) {
        united = {mir[0], mir[1], mir[2], own[0], own[1], own[2], own[3]};
        attach = 3;
    } else {
        united = {own[0], own[1], own[2], own[3], mir[1], mir[2], mir[3]};
        attach = 3;
    }

    int prev = attach - 1;
    while (prev >= 0 && samePoint(united[static_cast<size_t>(prev)], united[static_cast<size_t>(attach)])) --prev;
    int next = attach + 1;
    while (next <= 6 && samePoint(united[static_cast<size_t>(next)], united[static_cast<size_t>(attach)])) ++next;
    if (prev < 0 || next > 6)
        throw Error("attachment angle undefined: a whole chain collapses to the vertex");

    const double phiPrev =
        tangentDirection(united[static_cast<size_t>(attach)], united[static_cast<size_t>(prev)]);
    const double phiNext =
        tangentDirection(united[static_cast<size_t>(attach)], united[static_cast<size_t>(next)]);
    return normalizeAngle2Pi(phiPrev - phiNext);
}

} // namespace arc
