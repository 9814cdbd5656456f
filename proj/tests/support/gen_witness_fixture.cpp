// Regenerates the shipped feasibility-witness ledger fixture. Run with the
// target directory as argv[1]; the committed copy lives in
// tests/fixtures/table3_witness and the acceptance suite asserts the two
// stay byte-identical.
#include <aprgauntlet/campaign/ledger.hpp>

#include "witness.hpp"

#include <iostream>

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_witness_fixture <out-dir>\n";
        return 2;
    }
    using namespace aprgauntlet::campaign;
    CampaignLedger ledger = witness::build_ledger();

    LedgerManifest manifest;
    manifest.name = "table3-witness";
    manifest.config_digest = ledger.config_digest();
    manifest.created_at = "2025-07-01T00:00:00Z";
    ledger_io::save(argv[1], manifest, ledger);
    std::cout << "wrote " << ledger.records().size() << " records to " << argv[1] << "\n";
    return 0;
}
