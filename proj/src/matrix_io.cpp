#include "oplab/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace oplab {

namespace {

static_assert(std::endian::native == std::endian::little, "matrix I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    char buf[sizeof(T)];
    if (!in.read(buf, sizeof(T))) throw Error(ErrorKind::InputError, "truncated matrix stream");
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

}  // namespace

void write_matrix_binary(std::ostream& out, const Matrix& m) {
    put<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            put<double>(out, m(i, j).real());
            put<double>(out, m(i, j).imag());
        }
    }
}

Matrix read_matrix_binary(std::istream& in) {
    const auto rows = get<std::uint64_t>(in);
    const auto cols = get<std::uint64_t>(in);
    if (rows > (1u << 20) || cols > (1u << 20)) throw Error(ErrorKind::InputError, "implausible matrix dimensions");
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double re = get<double>(in);
            const double im = get<double>(in);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

void save_matrix_binary(const std::string& path, const Matrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InputError, "cannot open " + path + " for writing");
    write_matrix_binary(out, m);
}

Matrix load_matrix_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InputError, "cannot open " + path);
    return read_matrix_binary(in);
}

nlohmann::json matrix_to_json(const Matrix& m) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(ErrorKind::InputError, "matrix must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw Error(ErrorKind::InputError, "matrix row " + std::to_string(i) + " has the wrong length");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& e = row[static_cast<std::size_t>(c)];
            if (e.is_number()) {
                m(i, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
            } else {
                throw Error(ErrorKind::InputError,
                            "matrix entry (" + std::to_string(i) + "," + std::to_string(c) + ") is not a number or [re, im]");
            }
        }
    }
    return m;
}

}  // namespace oplab
