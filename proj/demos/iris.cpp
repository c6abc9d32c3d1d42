// Train a 4-9-3 network on Iris with PPSO and print the test confusion matrix.

#include <iostream>

#include "ppso/runner.hpp"

int main() {
    ppso::ExperimentConfig cfg = ppso::ExperimentConfig::defaults(ppso::Algorithm::PPSO);
    cfg.dataset = PPSO_DATA_DIR "/iris.csv";
    cfg.seeds = {1, 2, 3};
    cfg.iterations = 200;

    const ppso::RunReport report = ppso::run_experiment(cfg);
    std::cout << ppso::summary_text(report) << "\nconfusion (best seed):\n";
    report.best().confusion.write_csv(std::cout, report.class_names);
}
