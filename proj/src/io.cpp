#include "magicwit/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace magicwit::io {

nlohmann::json hamiltonian_to_json(const PauliHamiltonian& h) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : h.terms()) {
        std::string pattern = t.op.str().substr(1);  // drop the sign character
        terms.push_back({{"coeff", -t.weight * double(t.op.sign())}, {"pauli", pattern}});
    }
    return {{"n", h.n()}, {"terms", terms}};
}

PauliHamiltonian hamiltonian_from_json(const nlohmann::json& doc) {
    if (!doc.contains("n") || !doc.contains("terms"))
        throw std::invalid_argument("hamiltonian document needs 'n' and 'terms'");
    int n = doc.at("n").get<int>();
    std::vector<std::pair<double, std::string>> terms;
    for (const auto& t : doc.at("terms"))
        terms.emplace_back(t.at("coeff").get<double>(), t.at("pauli").get<std::string>());
    return PauliHamiltonian::from_text_terms(n, terms);
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    nlohmann::json doc;
    in >> doc;
    return doc;
}

void save_json(const nlohmann::json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << doc.dump(2) << "\n";
}

PauliHamiltonian load_hamiltonian(const std::string& path) {
    return hamiltonian_from_json(load_json(path));
}

void save_hamiltonian(const PauliHamiltonian& h, const std::string& path) {
    save_json(hamiltonian_to_json(h), path);
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::string& schema,
                     const std::vector<std::string>& columns, const std::string& manifest_path)
    : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out) {
        delete impl_;
        throw std::invalid_argument("cannot write " + path);
    }
    impl_->out << "# schema: " << schema << "\n";
    impl_->out << "# manifest: " << manifest_path << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i)
        impl_->out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

void CsvWriter::close() {
    if (impl_ && impl_->out.is_open()) impl_->out.close();
}

CsvWriter::~CsvWriter() {
    close();
    delete impl_;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace magicwit::io
