#include "eprnet/network.hpp"

#include <sstream>

namespace eprnet {

namespace {

double unitarity_residual_of(const CMat6& m) {
    return (m.adjoint() * m - CMat6::Identity()).norm();
}

} // namespace

PassiveNetwork make_network(const CMat6& entries, std::string label) {
    PassiveNetwork net;
    net.label = std::move(label);
    net.unitarity_residual = unitarity_residual_of(entries);
    if (net.unitarity_residual <= kUnitaryTol) {
        net.entries = entries;
        return net;
    }
    if (net.unitarity_residual <= kUnitaryRepairTol) {
        // Polar projection: nearest unitary in Frobenius norm is U V* from
        // the SVD U Sigma V*.
        Eigen::JacobiSVD<CMat6> svd(entries,
                                    Eigen::ComputeFullU | Eigen::ComputeFullV);
        net.entries = svd.matrixU() * svd.matrixV().adjoint();
        net.reprojected = true;
        return net;
    }
    std::ostringstream msg;
    msg << "matrix is not unitary: residual " << net.unitarity_residual
        << " exceeds " << kUnitaryRepairTol;
    throw NonUnitaryInput(msg.str());
}

const CMat12x6& quadrature_map() {
    static const CMat12x6 k = [] {
        CMat12x6 m = CMat12x6::Zero();
        for (int i = 0; i < 6; ++i) {
            m(2 * i, i) = Complex(1.0, 0.0);
            m(2 * i + 1, i) = Complex(0.0, -1.0);
        }
        return m;
    }();
    return k;
}

const RMat12& symplectic_form() {
    static const RMat12 j = [] {
        RMat12 m = RMat12::Zero();
        for (int i = 0; i < 6; ++i) {
            m(2 * i, 2 * i + 1) = 1.0;
            m(2 * i + 1, 2 * i) = -1.0;
        }
        return m;
    }();
    return j;
}

RMat12 quadrature_expand(const CMat6& entries) {
    RMat12 out;
    for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 6; ++c) {
            const Complex s = entries(r, c);
            out(2 * r, 2 * c) = s.real();
            out(2 * r, 2 * c + 1) = -s.imag();
            out(2 * r + 1, 2 * c) = s.imag();
            out(2 * r + 1, 2 * c + 1) = s.real();
        }
    }
    return out;
}

QuadratureNetwork quadrature_form(const PassiveNetwork& net) {
    const double residual = (net.entries.adjoint() * net.entries -
                             CMat6::Identity()).norm();
    if (residual > kUnitaryTol) {
        std::ostringstream msg;
        msg << "network is not unitary: residual " << residual;
        throw NonUnitaryInput(msg.str());
    }
    QuadratureNetwork q;
    q.entries = quadrature_expand(net.entries);
    return q;
}

PassiveNetwork complex_form(const QuadratureNetwork& qnet) {
    const RMat12& s = qnet.entries;
    const double orth = (s.transpose() * s - RMat12::Identity()).norm();
    if (orth > kUnitaryTol) {
        std::ostringstream msg;
        msg << "quadrature matrix is not orthogonal: residual " << orth;
        throw NonSymplecticInput(msg.str());
    }
    const RMat12& j = symplectic_form();
    const double symp = (s * j * s.transpose() - j).norm();
    if (symp > kUnitaryTol) {
        std::ostringstream msg;
        msg << "quadrature matrix is not symplectic: residual " << symp;
        throw NonSymplecticInput(msg.str());
    }
    // 1/4 K* S K picks Re from the (2r, 2c) entry and Im from (2r+1, 2c).
    CMat6 out;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            out(r, c) = Complex(s(2 * r, 2 * c), s(2 * r + 1, 2 * c));
    return make_network(out);
}

void validate(const NopaParams& params) {
    if (!(params.gamma > 0.0))
        throw std::invalid_argument("gamma must be positive");
    if (!(params.kappa >= 0.0))
        throw std::invalid_argument("kappa must be nonnegative");
    if (!(params.epsilon >= 0.0))
        throw std::invalid_argument("epsilon must be nonnegative");
    if (!(params.gamma_ref > 0.0))
        throw std::invalid_argument("gamma_ref must be positive");
}

PassiveNetwork cfb_network() {
    CMat6 m = CMat6::Zero();
    // Mirror routing of the dual-NOPA coherent feedback loop: each NOPA's
    // outputs feed the other's inputs, outer ports close the loop.
    m(0, 4) = 1.0;
    m(1, 3) = 1.0;
    m(2, 0) = 1.0;
    m(3, 5) = 1.0;
    m(4, 2) = 1.0;
    m(5, 1) = 1.0;
    return make_network(m, "cfb");
}

PassiveNetwork lm_paper_network() {
    // Published locally-optimal interconnection, 15-decimal entries.
    static const double v[6][6] = {
        {-0.012305658659326, 0.000000000000071, 0.008576364236157,
         -0.000000000000142, 0.999887502042829, 0.000000000000110},
        {-0.000000000000071, -0.012305658659326, -0.000000000000109,
         0.999887502042830, 0.000000000000142, 0.008576364236157},
        {0.999887502042829, 0.000000000000001, -0.008471156255372,
         0.000000000000069, 0.012378318554964, -0.000000000000048},
        {0.000000000000051, 0.008576364236158, 0.000000000000085,
         -0.008471156255372, -0.000000000000112, 0.999927340104363},
        {0.008576364236157, -0.000000000000050, 0.999927340104363,
         0.000000000000111, -0.008471156255372, -0.000000000000085},
        {-0.000000000000001, 0.999887502042829, 0.000000000000047,
         0.012378318554963, -0.000000000000069, -0.008471156255373}};
    CMat6 m;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            m(r, c) = v[r][c];
    return make_network(m, "lm-paper");
}

} // namespace eprnet
