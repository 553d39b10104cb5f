// oscillator.cpp: Qubit coupled to a single damped harmonic oscillator

#include "adiabr/oscillator.hpp"

#include "adiabr/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace adiabr {

namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Leak {
    double t;
    double population;
};

Mat kron(const Mat2& q, const Mat& o) {
    const Eigen::Index n = o.rows();
    Mat out(2 * n, 2 * n);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out.block(a * n, b * n, n, n) = q(a, b) * o;
    return out;
}

Mat pad(const Mat& rho, std::size_t from, std::size_t to) {
    const auto n0 = static_cast<Eigen::Index>(from), n1 = static_cast<Eigen::Index>(to);
    Mat out = Mat::Zero(2 * n1, 2 * n1);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out.block(a * n1, b * n1, n0, n0) = rho.block(a * n0, b * n0, n0, n0);
    return out;
}

JointRun run_once(const OscillatorModel& model, const RotatingFieldParams& field, CouplingMode mode,
                  const SolverConfig& cfg, const std::vector<double>& samples, const JointState& start) {
    const auto n = static_cast<Eigen::Index>(start.n_fock);
    const Eigen::Index dim = 2 * n;
    const double occ = model.occupation();

    Mat x = Mat::Zero(n, n);
    Mat number = Mat::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) x(k, k + 1) = x(k + 1, k) = std::sqrt(double(k + 1));
    for (Eigen::Index k = 0; k < n; ++k) number(k, k) = double(k) + 0.5;
    const Mat h_osc = kron(pauli::identity(), model.omega0 * number);
    const Mat id_osc = Mat::Identity(n, n);

    // anti-commutator weights kappa (N + 1) k + kappa N (k + 1), top level truncated
    Eigen::VectorXd damp(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Eigen::Index k = i % n;
        damp(i) = model.kappa * ((occ + 1.0) * double(k) + occ * (k + 1 < n ? double(k + 1) : 0.0));
    }
    const double down = 2.0 * model.kappa * (occ + 1.0);
    const double up = 2.0 * model.kappa * occ;

    auto hamiltonian = [&](double t) {
        const FrameAngles f = rotating_frame(t, field);
        const Vec3 c = transformed_coupling(mode, f).c;
        const Mat2 cs = c.x() * pauli::x() + c.y() * pauli::y() + c.z() * pauli::z();
        return Mat(kron(effective_hamiltonian(f, Basis::eigen), id_osc) + h_osc +
                   kron(0.5 * model.lambda * cs, x));
    };

    auto rhs = [&](double t, const Vec& y) -> Vec {
        const Eigen::Map<const Mat> rho(y.data(), dim, dim);
        const Mat hr = hamiltonian(t) * rho;
        Mat out = cd(0.0, -1.0) * (hr - hr.adjoint());
        for (Eigen::Index j = 0; j < dim; ++j) {
            const Eigen::Index kj = j % n;
            for (Eigen::Index i = 0; i < dim; ++i) {
                const Eigen::Index ki = i % n;
                cd v = -(damp(i) + damp(j)) * rho(i, j);
                if (ki + 1 < n && kj + 1 < n)
                    v += down * std::sqrt(double((ki + 1) * (kj + 1))) * rho(i + 1, j + 1);
                if (up > 0.0 && ki > 0 && kj > 0)
                    v += up * std::sqrt(double(ki * kj)) * rho(i - 1, j - 1);
                out(i, j) += v;
            }
        }
        const Mat sym = 0.5 * (out + out.adjoint());
        return Eigen::Map<const Vec>(sym.data(), dim * dim);
    };

    JointRun run;
    run.n_fock_used = start.n_fock;
    Trajectory& traj = run.trajectory;
    traj.basis_tag = Basis::eigen;
    traj.scenario = Scenario::rotation;

    auto as_joint = [&](const Vec& y) {
        JointState js;
        js.n_fock = start.n_fock;
        js.rho = Eigen::Map<const Mat>(y.data(), dim, dim);
        return js;
    };
    auto record = [&](double t, const Vec& y) {
        traj.push(t, reduce_to_qubit(as_joint(y)), RateSet{});
    };
    auto on_step = [&](double t, const Vec& y) {
        const JointState js = as_joint(y);
        StepDiagnostics& d = traj.diagnostics;
        d.max_trace_dev = std::max(d.max_trace_dev, std::abs(js.rho.trace().real() - 1.0));
        d.max_hermitian_dev = std::max(d.max_hermitian_dev, (js.rho - js.rho.adjoint()).cwiseAbs().maxCoeff());
        const double top = js.top_level_population();
        if (top > 1e-6) throw Leak{t, top};
        if (samples.empty()) record(t, y);
    };

    Vec y0 = Eigen::Map<const Vec>(start.rho.data(), dim * dim);
    if (samples.empty()) record(cfg.t_start, y0);
    Vec y_final = y0;
    const IntegrationStats st = integrate(
        rhs, y0, cfg, samples, record, [&](double t, const Vec& y) {
            on_step(t, y);
            if (t == cfg.t_end) y_final = y;
        });
    traj.diagnostics.accepted = st.accepted;
    traj.diagnostics.rejected = st.rejected;
    run.final_state = as_joint(y_final);
    if (model.temperature > 0.0)
        traj.warnings.push_back("finite temperature: thermal excitation channel added to the oscillator dissipator");
    return run;
}

} // namespace

void OscillatorModel::validate() const {
    if (!std::isfinite(omega0) || omega0 <= 0.0) throw ConfigError("omega0 must be > 0");
    if (!std::isfinite(lambda)) throw ConfigError("lambda must be finite");
    if (!std::isfinite(kappa) || kappa < 0.0) throw ConfigError("kappa must be >= 0");
    if (n_fock < 2) throw ConfigError("n_fock must be >= 2");
    if (!std::isfinite(temperature) || temperature < 0.0) throw ConfigError("temperature must be >= 0");
}

double OscillatorModel::occupation() const { return planck_occupation(omega0, temperature); }

JointState JointState::product(const QubitState& qubit, const Mat& oscillator) {
    JointState js;
    js.n_fock = static_cast<std::size_t>(oscillator.rows());
    js.rho = kron(qubit.rho(), oscillator);
    js.validate();
    return js;
}

Mat JointState::thermal_oscillator(std::size_t n_fock, double omega0, double temperature) {
    const auto n = static_cast<Eigen::Index>(n_fock);
    Mat out = Mat::Zero(n, n);
    if (temperature == 0.0) {
        out(0, 0) = 1.0;
        return out;
    }
    const double q = std::exp(-omega0 / temperature);
    double w = 1.0, sum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k, w *= q) {
        out(k, k) = w;
        sum += w;
    }
    return out / sum;
}

void JointState::validate() const {
    const auto dim = static_cast<Eigen::Index>(2 * n_fock);
    if (n_fock < 2 || rho.rows() != dim || rho.cols() != dim)
        throw ValidationError("joint state must be (2 n_fock) x (2 n_fock) with n_fock >= 2");
    if (std::abs(rho.trace() - cd(1.0, 0.0)) > kTraceTol)
        throw ValidationError("joint state trace differs from 1");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw ValidationError("joint state is not Hermitian");
    const Mat herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kEigenFloor)
        throw ValidationError("joint state is not positive semidefinite");
}

double JointState::top_level_population() const {
    const auto n = static_cast<Eigen::Index>(n_fock);
    return rho(n - 1, n - 1).real() + rho(2 * n - 1, 2 * n - 1).real();
}

QubitState reduce_to_qubit(const JointState& joint) {
    const auto n = static_cast<Eigen::Index>(joint.n_fock);
    Mat2 q;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) q(a, b) = joint.rho.block(a * n, b * n, n, n).trace();
    return QubitState(0.5 * (q + q.adjoint()));
}

Mat reduce_to_oscillator(const JointState& joint) {
    const auto n = static_cast<Eigen::Index>(joint.n_fock);
    return joint.rho.block(0, 0, n, n) + joint.rho.block(n, n, n, n);
}

JointRun evolve_joint(const OscillatorModel& model, const RotatingFieldParams& field,
                      CouplingMode mode, const SolverConfig& cfg, const std::vector<double>& samples,
                      std::optional<JointState> initial) {
    model.validate();
    field.validate();
    cfg.validate();
    if (mode == CouplingMode::longitudinal)
        throw ConfigError("the oscillator model supports the perp-y and inplane-z couplings");

    JointState start;
    if (initial) {
        initial->validate();
        start = *initial;
    } else {
        const FrameAngles f0 = rotating_frame(cfg.t_start, field);
        const Mat2 u = frame_unitary(f0, Basis::eigen);
        const Mat2 lab = thermal_lab_state(f0, 0.0, Basis::eigen).rho();
        const Mat2 q = u * lab * u.adjoint();
        start = JointState::product(QubitState(0.5 * (q + q.adjoint())),
                                    JointState::thermal_oscillator(model.n_fock, model.omega0,
                                                                   model.temperature));
    }

    const std::size_t n0 = start.n_fock;
    for (;;) {
        try {
            JointRun run = run_once(model, field, mode, cfg, samples, start);
            if (run.n_fock_used != n0) {
                std::ostringstream os;
                os << "Fock truncation grown from " << n0 << " to " << run.n_fock_used;
                run.trajectory.warnings.push_back(os.str());
            }
            return run;
        } catch (const Leak& leak) {
            const std::size_t next = 2 * start.n_fock;
            if (!model.auto_grow || next > model.max_fock) {
                std::ostringstream os;
                os << "Fock truncation leak: top-level population " << leak.population << " at t = "
                   << leak.t << " with n_fock = " << start.n_fock << "; increase n_fock";
                throw TruncationError(os.str());
            }
            start.rho = pad(start.rho, start.n_fock, next);
            start.n_fock = next;
        }
    }
}

} // namespace adiabr
