//! One line per acceptance criterion, each at its stated limit. Runs without
//! the libtest harness so the lines are printed even when everything passes.

use homalg::verify::{self, Status, VerifyCorpus};

fn main() {
    let corpus = VerifyCorpus::bundled().expect("bundled corpus");
    let seed = corpus.seed;
    let criteria: Vec<Box<dyn Fn() -> verify::CriterionReport>> = vec![
        Box::new(verify::criterion_1),
        Box::new(verify::criterion_2),
        Box::new(move || verify::criterion_3(seed)),
        Box::new(move || verify::criterion_4(seed)),
        Box::new(|| verify::criterion_5(&corpus)),
        Box::new(verify::criterion_6),
        Box::new(|| verify::criterion_7(&corpus)),
        Box::new(move || verify::criterion_8(seed)),
        Box::new(move || verify::criterion_9(seed)),
        Box::new(|| verify::criterion_10(&corpus)),
    ];
    let mut failed = 0;
    for run in &criteria {
        let r = run();
        println!("{r}");
        if r.status != Status::Pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
