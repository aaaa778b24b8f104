#include "siegelarc/hexagon.hpp"

#include <cmath>
#include <utility>

namespace arc {
namespace {

const double kPi = std::acos(-1.0);

// G with G G^T = diag(e^{c1}, e^{c2}); the off-diagonal shape makes
// G sigma^{-1} a positive diagonal for the standard quarter rotation sigma.
Mat2 gammaOf(double c1, double c2) {
    return {0.0, std::exp(0.5 * c1), -std::exp(0.5 * c2), 0.0};
}

// Eigensystem of a PD matrix rescaled to unit determinant, so the degeneracy
// flag reflects the eigenvalue *ratio* (matching the diagonal-ray test on the
// log scale) instead of the absolute gap.
EigSym2 normalizedRotation(const Sym2& m) {
    const double dt = m.det();
    const double s = (dt > 0) ? 1.0 / std::sqrt(dt) : 1.0;
    return eigSym2Any(m * s);
}

struct StdFrame {
    Sym2 A, C, D;       // endpoint charts with (P, B, Q) frozen at (0, Id, inf)
    WeylVector b, c, d; // side vectors
    GenericityType type = GenericityType::GEN;
};

// Moves (P, B, C, Q) to (0, Id, diag, inf) and reads the side data. When C is
// scalar the residual rotation gauge is fixed by diagonalizing A (or, if A is
// scalar too, the angle factor of D).
StdFrame standardizeHex(const OrderedHexagon& h) {
    const auto& t = h.sixTuple;
    const StandardizedQuad q = mapQuadrupleToStandard(t[0], t[2], t[3], t[5]);
    Sym2 Ahat = chartValue(actLagrangian(q.g, t[1]));
    Sym2 Dhat = chartValue(actLagrangian(q.g, t[4]));
    const Sym2 Chat = Sym2::diag(q.lambda.x1, q.lambda.x2);

    StdFrame f;
    f.b = tubeVector(Ahat, Sym2::identity());
    f.c = WeylVector{std::log(q.lambda.x1), std::log(q.lambda.x2)};
    f.d = tubeVector(Chat, Dhat);
    f.type = classifyVectors(f.b, f.c, f.d);

    if (f.c.inDiagonal()) {
        EigSym2 ea = normalizedRotation(Ahat);
        Rotation2 gauge = ea.S;
        if (ea.degenerate) {
            const Mat2 Gi = gammaOf(f.c.x1, f.c.x2).inverse();
            gauge = normalizedRotation(congruence(Gi, Dhat)).S;
        }
        Ahat = congruence(gauge.mat(), Ahat);
        Dhat = congruence(gauge.mat(), Dhat);
    }
    f.A = Ahat;
    f.C = Chat;
    f.D = Dhat;
    return f;
}

// Angles actually fed to the standard-form formulas, per stratum: a scalar A
// absorbs alpha1, a scalar C merges the two angles into their sum, a scalar
// angle factor of D absorbs alpha2.
std::pair<double, double> effectiveAngles(const ArcCoordinates& a, GenericityType ty) {
    const double a1 = normalizeAngle2Pi(a.alpha1.value_or(0.0));
    const double a2 = normalizeAngle2Pi(a.alpha2.value_or(0.0));
    switch (ty) {
        case GenericityType::GEN: return {a1, a2};
        case GenericityType::T1_1: return {0.0, a2};
        case GenericityType::T1_2: return {0.0, normalizeAngle2Pi(a1 + a2)};
        case GenericityType::T1_3: return {a1, 0.0};
        default: return {0.0, 0.0};
    }
}

StandardHexMatrices buildMatrices(const WeylVector& b, const WeylVector& d, double c1,
                                  double c2, double e1, double e2) {
    const Rotation2 S1 = rotationOfAngleClass(e1);
    const Rotation2 S2 = rotationOfAngleClass(e2);
    StandardHexMatrices m;
    m.A = congruence(S1.mat().transpose(), Sym2::diag(std::exp(-b.x2), std::exp(-b.x1)));
    m.C = Sym2::diag(std::exp(c1), std::exp(c2));
    const Mat2 G = gammaOf(c1, c2);
    m.D = congruence(G * S2.mat(), Sym2::diag(std::exp(d.x1), std::exp(d.x2)));
    return m;
}

double foldToPi(double x) {
    x = normalizeAngle2Pi(x);
    return x > kPi ? 2.0 * kPi - x : x;
}

bool offDiagSmall(const Sym2& m) {
    return std::abs(m.m12) <= 1e-9 * std::max(1.0, m.norm());
}

bool scalarChart(const Sym2& m) {
    const Sym2 dev = m - Sym2::scalar(0.5 * m.tr());
    return dev.norm() <= 1e-9 * std::max(1.0, m.norm());
}

OrderedHexagon assembleFromTwelve(const std::array<Lagrangian, 12>& tw) {
    OrderedHexagon h;
    h.twelveTuple = tw;
    // (P, A, B, C, D, Q) = (P2, Q2, P4, P5, Q5, P1)
    h.sixTuple = {tw[3], tw[5], tw[7], tw[8], tw[10], tw[0]};
    h.tubes = {RTube::fromEndpoints(tw[0], tw[3]), RTube::fromEndpoints(tw[2], tw[5]),
               RTube::fromEndpoints(tw[4], tw[7]), RTube::fromEndpoints(tw[6], tw[9]),
               RTube::fromEndpoints(tw[8], tw[11]), RTube::fromEndpoints(tw[10], tw[1])};
    return h;
}

OrderedHexagon fromMixed(const std::array<Lagrangian, 6>& t) {
    const Lagrangian &P = t[0], &A = t[1], &B = t[2], &C = t[3], &D = t[4], &Q = t[5];
    const SpMap g = mapPairToStandard(P, Q);
    const SpMap gi = g.inverse();
    const Sym2 a = chartValue(actLagrangian(g, A));
    const Sym2 bb = chartValue(actLagrangian(g, B));
    const Sym2 c = chartValue(actLagrangian(g, C));
    const Sym2 d = chartValue(actLagrangian(g, D));

    const Sym2 aba = Sym2::fromMat(a.mat() * bb.inverse().mat() * a.mat());
    const Sym2 dcd = Sym2::fromMat(d.mat() * c.inverse().mat() * d.mat());
    const Lagrangian P3 = actLagrangian(gi, Lagrangian::fromChart(aba));
    const Lagrangian P6 = actLagrangian(gi, Lagrangian::fromChart(dcd));
    const Lagrangian Q1 = actLagrangian(gi, Lagrangian::fromChart(-a));
    const Lagrangian Q6 = actLagrangian(gi, Lagrangian::fromChart(-d));
    const auto [Q3, Q4] = commonPerpendicularOriented(B, C, P6, P3);

    return assembleFromTwelve({Q, Q6, Q1, P, P3, A, Q3, B, C, Q4, D, P6});
}

OrderedHexagon fromOuterP(const std::array<Lagrangian, 6>& p) {
    // p = (P1..P6); the even sides are common perpendiculars of consecutive
    // odd sides, endpoints oriented by the separating arcs.
    const auto [Q1, Q2] = commonPerpendicularOriented(p[1], p[2], p[3], p[0]);
    const auto [Q3, Q4] = commonPerpendicularOriented(p[3], p[4], p[5], p[2]);
    const auto [Q5, Q6] = commonPerpendicularOriented(p[5], p[0], p[1], p[4]);
    return assembleFromTwelve({p[0], Q6, Q1, p[1], p[2], Q2, Q3, p[3], p[4], Q4, Q5, p[5]});
}

OrderedHexagon fromOuterQ(const std::array<Lagrangian, 6>& qq) {
    // qq = (Q1..Q6); odd sides from consecutive even sides.
    const auto [P1, P2] = commonPerpendicularOriented(qq[5], qq[0], qq[1], qq[4]);
    const auto [P3, P4] = commonPerpendicularOriented(qq[1], qq[2], qq[3], qq[0]);
    const auto [P5, P6] = commonPerpendicularOriented(qq[3], qq[4], qq[5], qq[2]);
    return assembleFromTwelve({P1, qq[5], qq[0], P2, P3, qq[1], qq[2], P4, P5, qq[3], qq[4], P6});
}

} // namespace

// -------------------------------------------------------------- construction

OrderedHexagon hexagonFromSixTuple(const std::array<Lagrangian, 6>& t,
                                   SixTupleConvention convention) {
    if (!isMaximalTuple(std::span<const Lagrangian>(t.data(), t.size())))
        throw NotMaximal("hexagon: determining 6-tuple is not maximal");
    switch (convention) {
        case SixTupleConvention::Mixed: return fromMixed(t);
        case SixTupleConvention::OuterP: return fromOuterP(t);
        default: return fromOuterQ(t);
    }
}

// --------------------------------------------------------------- genericity

GenericityType classifyVectors(const WeylVector& b, const WeylVector& c,
                               const WeylVector& d) {
    const bool bd = b.inDiagonal(), cd = c.inDiagonal(), dd = d.inDiagonal();
    if (bd && cd && dd) return GenericityType::T3;
    if (bd && cd) return GenericityType::T2_1;
    if (bd && dd) return GenericityType::T2_2;
    if (cd && dd) return GenericityType::T2_3;
    if (bd) return GenericityType::T1_1;
    if (cd) return GenericityType::T1_2;
    if (dd) return GenericityType::T1_3;
    return GenericityType::GEN;
}

GenericityType classify(const OrderedHexagon& h) { return standardizeHex(h).type; }

const char* genericityTag(GenericityType t) {
    switch (t) {
        case GenericityType::GEN: return "GEN";
        case GenericityType::T1_1: return "T1_1";
        case GenericityType::T1_2: return "T1_2";
        case GenericityType::T1_3: return "T1_3";
        case GenericityType::T2_1: return "T2_1";
        case GenericityType::T2_2: return "T2_2";
        case GenericityType::T2_3: return "T2_3";
        default: return "T3";
    }
}

std::optional<GenericityType> genericityFromTag(const std::string& tag) {
    for (const GenericityType t :
         {GenericityType::GEN, GenericityType::T1_1, GenericityType::T1_2,
          GenericityType::T1_3, GenericityType::T2_1, GenericityType::T2_2,
          GenericityType::T2_3, GenericityType::T3})
        if (tag == genericityTag(t)) return t;
    return std::nullopt;
}

// -------------------------------------------------------------- coordinates

ArcCoordinates canonicalizeCoords(const ArcCoordinates& a) {
    ArcCoordinates r;
    r.b = WeylVector::sorted(a.b.x1, a.b.x2);
    r.c = WeylVector::sorted(a.c.x1, a.c.x2);
    r.d = WeylVector::sorted(a.d.x1, a.d.x2);
    r.type = classifyVectors(r.b, r.c, r.d);
    const double a1in = normalizeAngle2Pi(a.alpha1.value_or(0.0));
    const double a2in = normalizeAngle2Pi(a.alpha2.value_or(0.0));
    // Near the ends of the alpha1 range the flip acts on alpha2 alone, so fold
    // alpha2 as well inside this margin to keep the representative stable.
    const double edge = 1e-7;
    switch (r.type) {
        case GenericityType::GEN: {
            double a1 = a1in, a2 = a2in;
            if (a1 > kPi) {
                a1 = 2.0 * kPi - a1;
                a2 = normalizeAngle2Pi(2.0 * kPi - a2);
            }
            if (a1 < edge || a1 > kPi - edge) a2 = foldToPi(a2);
            r.alpha1 = a1;
            r.alpha2 = a2;
            break;
        }
        case GenericityType::T1_1: r.alpha2 = foldToPi(a2in); break;
        case GenericityType::T1_3: r.alpha1 = foldToPi(a1in); break;
        case GenericityType::T1_2: {
            const double s = normalizeAngle2Pi(a1in + a2in);
            const double alpha = foldToPi(normalizeAngle2Pi(s - kPi));
            r.alpha1 = 0.5 * alpha;
            r.alpha2 = normalizeAngle2Pi(0.5 * alpha + kPi);
            break;
        }
        default: break; // both collapsed
    }
    return r;
}

bool coordsApproxEqual(const ArcCoordinates& x, const ArcCoordinates& y, double tol) {
    if (x.type != y.type) return false;
    const auto close = [&](const WeylVector& u, const WeylVector& v) {
        return std::abs(u.x1 - v.x1) <= tol && std::abs(u.x2 - v.x2) <= tol;
    };
    if (!close(x.b, y.b) || !close(x.c, y.c) || !close(x.d, y.d)) return false;
    if (x.alpha1.has_value() != y.alpha1.has_value() ||
        x.alpha2.has_value() != y.alpha2.has_value())
        return false;
    const auto angClose = [&](double p, double q) {
        const double dlt = std::abs(normalizeAngle2Pi(p) - normalizeAngle2Pi(q));
        return std::min(dlt, 2.0 * kPi - dlt) <= tol;
    };
    const double xa1 = x.alpha1.value_or(0.0), xa2 = x.alpha2.value_or(0.0);
    const double ya1 = y.alpha1.value_or(0.0), ya2 = y.alpha2.value_or(0.0);
    const bool direct = angClose(xa1, ya1) && angClose(xa2, ya2);
    const bool flipped = angClose(xa1, -ya1) && angClose(xa2, -ya2);
    return direct || flipped;
}

StandardHexMatrices standardMatrices(const ArcCoordinates& a) {
    const WeylVector b = WeylVector::sorted(a.b.x1, a.b.x2);
    const WeylVector c = WeylVector::sorted(a.c.x1, a.c.x2);
    const WeylVector d = WeylVector::sorted(a.d.x1, a.d.x2);
    if (!(b.x2 > 0.0) || !(c.x2 > 0.0) || !(d.x2 > 0.0))
        throw Error("arc coordinates: side vectors must have positive components");
    const GenericityType ty = classifyVectors(b, c, d);
    const auto [e1, e2] = effectiveAngles(a, ty);
    return buildMatrices(b, d, c.x1, c.x2, e1, e2);
}

OrderedHexagon hexagonFromCoords(const ArcCoordinates& a) {
    const StandardHexMatrices m = standardMatrices(a);
    const std::array<Lagrangian, 6> six = {
        Lagrangian::zero(),           Lagrangian::fromChart(m.A),
        Lagrangian::fromChart(Sym2::identity()), Lagrangian::fromChart(m.C),
        Lagrangian::fromChart(m.D),   Lagrangian::infinity()};
    return hexagonFromSixTuple(six, SixTupleConvention::Mixed);
}

ArcCoordinates coordsFromHexagon(const OrderedHexagon& h) {
    const StdFrame f = standardizeHex(h);
    ArcCoordinates raw;
    raw.b = f.b;
    raw.c = f.c;
    raw.d = f.d;
    raw.type = f.type;
    const bool bReg = !f.b.inDiagonal();
    const bool cReg = !f.c.inDiagonal();
    const bool dReg = !f.d.inDiagonal();
    if (cReg) {
        if (bReg) raw.alpha1 = angleClassOf(normalizedRotation(f.A).S);
        if (dReg) {
            const Mat2 Gi = gammaOf(f.c.x1, f.c.x2).inverse();
            const Sym2 M = congruence(Gi, f.D);
            raw.alpha2 = angleClassOf(normalizedRotation(M).S, /*reflectedBranch=*/true);
        }
    } else if (bReg && dReg) {
        // Scalar C: the standard gauge has already made A diagonal, so the
        // angle factor of D carries the full angle sum.
        const Mat2 Gi = gammaOf(f.c.x1, f.c.x2).inverse();
        const Sym2 M = congruence(Gi, f.D);
        raw.alpha1 = 0.0;
        raw.alpha2 = angleClassOf(normalizedRotation(M).S, /*reflectedBranch=*/true);
    }
    return canonicalizeCoords(raw);
}

// ---------------------------------------------------------- polygonal chain

PolygonalChain polygonalChain(const OrderedHexagon& h) {
    const StdFrame f = standardizeHex(h);
    PolygonalChain pc;
    const std::array<Sym2, 4> pts = {f.A, Sym2::identity(), f.C, f.D};
    for (int i = 0; i < 4; ++i) {
        const auto [level, h2] = splitRH(PosDef2(pts[static_cast<size_t>(i)]));
        pc.vertices[static_cast<size_t>(i)] = ChainVertex{level, h2};
    }
    pc.segmentLengths = {f.b.x1 - f.b.x2, f.c.x1 - f.c.x2, f.d.x1 - f.d.x2};
    const ArcCoordinates coords = coordsFromHexagon(h);
    switch (coords.type) {
        case GenericityType::GEN:
            pc.angles = {*coords.alpha1, *coords.alpha2};
            break;
        case GenericityType::T1_1: pc.angles = {*coords.alpha2}; break;
        case GenericityType::T1_3: pc.angles = {*coords.alpha1}; break;
        case GenericityType::T1_2: pc.angles = {2.0 * *coords.alpha1}; break;
        default: break;
    }
    return pc;
}

// ------------------------------------------------------- polydisk detection

bool inPolydisk(const OrderedHexagon& h) {
    const StdFrame f = standardizeHex(h);
    return offDiagSmall(f.A) && offDiagSmall(f.D);
}

StabilizerClass stabilizerClass(const OrderedHexagon& h) {
    const StdFrame f = standardizeHex(h);
    if (scalarChart(f.A) && scalarChart(f.C) && scalarChart(f.D)) return StabilizerClass::PO2;
    if (offDiagSmall(f.A) && offDiagSmall(f.D)) return StabilizerClass::Z2;
    return StabilizerClass::Trivial;
}

// --------------------------------------------------------------- malefic map

WeylVector maleficMap(const WeylVector& b, const WeylVector& d, double alpha1,
                      double alpha2, const WeylVector& c) {
    const StandardHexMatrices m = buildMatrices(b, d, c.x1, c.x2, alpha1, alpha2);
    const Sym2 A2 = Sym2::fromMat(m.A.mat() * m.A.mat());
    const Sym2 DCD = Sym2::fromMat(m.D.mat() * m.C.inverse().mat() * m.D.mat());
    const Mat2 I = Mat2::identity();
    const Mat2 R = (A2.mat() - I).inverse() * (DCD.mat() - I) *
                   (DCD - m.C).mat().inverse() * (A2 - m.C).mat();
    const auto eg = eigMat2Real(R);
    return {std::log(std::max(eg[0], 1e-300)), std::log(std::max(eg[1], 1e-300))};
}

} // namespace arc
