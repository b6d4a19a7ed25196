//! Driving the batch front end from code, with the bundled data files.

use ppalg::cli::{data_path, run, Command, Format, JobSpec, Method};

fn main() {
    let path = |n: &str| Some(data_path(n).display().to_string());
    let mut job = JobSpec::new(Command::Vtrace);
    job.quiver = path("a2.json");
    job.auto = path("g.json");
    job.method = Method::Both;
    job.cutoff = Some(10);
    job.format = Format::Table;
    print!("{}", run(&job).output);

    let mut job = JobSpec::new(Command::Molien);
    job.quiver = path("a2.json");
    job.group = path("G.json");
    job.format = Format::Table;
    print!("{}", run(&job).output);

    let mut job = JobSpec::new(Command::Gorenstein);
    job.quiver = path("a2.json");
    job.cutoff = Some(8);
    job.format = Format::Table;
    print!("{}", run(&job).output);

    let suite = run(&JobSpec::new(Command::ExampleSuite));
    println!("example-suite exit status {}", suite.code);
}
