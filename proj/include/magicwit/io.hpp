#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "magicwit/hamiltonian.hpp"

namespace magicwit::io {

/// Hamiltonian document {"n": .., "terms": [{"coeff": .., "pauli": ".."}]};
/// coefficient signs are folded on load.
nlohmann::json hamiltonian_to_json(const PauliHamiltonian& h);
PauliHamiltonian hamiltonian_from_json(const nlohmann::json& doc);
PauliHamiltonian load_hamiltonian(const std::string& path);
void save_hamiltonian(const PauliHamiltonian& h, const std::string& path);

nlohmann::json load_json(const std::string& path);
void save_json(const nlohmann::json& doc, const std::string& path);

/// CSV with a versioned schema line and a manifest reference comment.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& schema,
              const std::vector<std::string>& columns, const std::string& manifest_path);
    void row(const std::vector<std::string>& cells);
    void close();
    ~CsvWriter();

  private:
    struct Impl;
    Impl* impl_;
};

std::string format_double(double v);

}  // namespace magicwit::io
