// serialization.cpp — JSON encoders/decoders

#include "qtf/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qtf/errors.hpp"

namespace qtf::io {

namespace {

[[noreturn]] void parse_error(const std::string& message)
{
    throw Error(ErrorKind::kParse, message);
}

double number_at(const json& j, const char* what)
{
    if (!j.is_number()) parse_error(std::string(what) + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) parse_error(std::string(what) + " must be finite");
    return x;
}

const json& member(const json& j, const char* key)
{
    if (!j.is_object()) parse_error("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) parse_error(std::string("missing key \"") + key + "\"");
    return *it;
}

} // namespace

json matrix_to_json(const CMatrix& m)
{
    require_square(m, "serialized matrix");
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            data.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
        }
    }
    return json{{"n", m.rows()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const json& j)
{
    const json& jn = member(j, "n");
    if (!jn.is_number_integer() || jn.get<long long>() <= 0) parse_error("\"n\" must be a positive integer");
    const auto n = static_cast<Eigen::Index>(jn.get<long long>());
    const json& data = member(j, "data");
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != n * n) {
        std::ostringstream os;
        os << "\"data\" must hold n^2 = " << n * n << " entries";
        parse_error(os.str());
    }
    CMatrix m(n, n);
    for (Eigen::Index idx = 0; idx < n * n; ++idx) {
        const json& entry = data[static_cast<std::size_t>(idx)];
        if (!entry.is_array() || entry.size() != 2) parse_error("matrix entries must be [re, im] pairs");
        m(idx / n, idx % n) = Complex(number_at(entry[0], "real part"), number_at(entry[1], "imaginary part"));
    }
    return m;
}

json real_vector_to_json(const RVector& v)
{
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
    return out;
}

RVector real_vector_from_json(const json& j)
{
    if (!j.is_array()) parse_error("expected an array of numbers");
    RVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = number_at(j[k], "vector entry");
    return v;
}

json real_matrix_to_json(const RMatrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

RMatrix real_matrix_from_json(const json& j)
{
    if (!j.is_array() || j.empty()) parse_error("expected a non-empty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    RMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != cols) parse_error("rows must be arrays of equal length");
        for (std::size_t k = 0; k < cols; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = number_at(j[i][k], "matrix entry");
        }
    }
    return m;
}

json generator_to_json(const DbcGenerator& g)
{
    return json{{"sigma", matrix_to_json(g.sigma().matrix())},
                {"lambdas", real_vector_to_json(g.lambdas())},
                {"etas", matrix_to_json(g.etas())}};
}

DbcGenerator generator_from_json(const json& j)
{
    const CMatrix sigma = matrix_from_json(member(j, "sigma"));
    const RVector lambdas = real_vector_from_json(member(j, "lambdas"));
    const CMatrix etas = matrix_from_json(member(j, "etas"));
    DbcGenerator g = DbcGenerator::from_spectral(lambdas, etas);
    if (sigma.rows() != g.dim()) {
        throw Error(ErrorKind::kDimensionMismatch, "stored sigma and lambdas sizes differ");
    }
    const double mismatch = relative_difference(sigma, g.sigma().matrix());
    if (mismatch > tol::kStructure) {
        std::ostringstream os;
        os << "stored sigma differs from the spectral data by " << mismatch;
        throw Error(ErrorKind::kInvalidDensity, os.str());
    }
    return g;
}

json chain_to_json(const ClassicalChain& chain)
{
    return json{{"q", real_matrix_to_json(chain.q)}, {"invariant", real_vector_to_json(chain.invariant)}};
}

ClassicalChain chain_from_json(const json& j)
{
    ClassicalChain chain{real_matrix_from_json(member(j, "q")), real_vector_from_json(member(j, "invariant"))};
    if (chain.q.rows() != chain.q.cols() || chain.invariant.size() != chain.q.rows()) {
        throw Error(ErrorKind::kDimensionMismatch, "Q must be square and match the invariant vector");
    }
    return chain;
}

json equilibrium_to_json(const EquilibriumResult& r)
{
    return json{
        {"hamiltonian", matrix_to_json(r.hamiltonian)},
        {"hamiltonian_eigenvalues", real_vector_to_json(r.hamiltonian_eigenvalues)},
        {"unitary", matrix_to_json(r.unitary)},
        {"kappa", r.kappa},
        {"c", r.c},
        {"diagonal_xi", real_vector_to_json(r.diagonal_xi)},
        {"diagonal_density", real_vector_to_json(r.diagonal_density)},
        {"xi", matrix_to_json(r.xi)},
        {"rho", matrix_to_json(r.rho.matrix())},
        {"pressure", r.pressure},
        {"pressure_variational", r.pressure_variational},
        {"residuals",
         {{"lagrange", r.lagrange_residual},
          {"eigenrelation", r.eigen_residual},
          {"trace_identity", r.trace_identity_residual}}},
    };
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) parse_error("cannot open \"" + path + "\"");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        parse_error("\"" + path + "\": " + e.what());
    }
}

} // namespace qtf::io
