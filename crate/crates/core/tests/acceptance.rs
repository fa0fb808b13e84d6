//! Acceptance criteria. Each test prints one PASS/FAIL line and asserts it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use examsched_core::crew::{expand_positions, organize_crew, Post};
use examsched_core::ingest::parse_proctor_log;
use examsched_core::model::{
    Assignee, CrewLevel, LogEntry, Room, RoomCatalog, RoomChoice, ScheduleConfig, ScheduledTest,
    SeniorityOrder, TestSession, TimeSlot,
};
use examsched_core::oracle::{brute_force_equity, brute_force_rooms};
use examsched_core::personnel::{
    solve_equity, update_log, AssignmentMatrix, AvailabilityMatrix, DemandVector, EquityContext,
    PersonnelError, SlotGroup,
};
use examsched_core::rooms::{
    choose_rooms, distribute_slack, room_weight, schedule_test, slack_priority,
};
use examsched_core::run_pipeline;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn report(n: u32, ok: bool, detail: &str) {
    println!(
        "criterion {n}: {} | {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn vc_rooms() -> Vec<(&'static str, u32)> {
    vec![
        ("46-210", 52),
        ("21-314", 79),
        ("16-223", 63),
        ("46-209", 50),
        ("46-307", 80),
        ("21-307", 52),
        ("16-224", 72),
        ("21-320", 79),
        ("41-103", 106),
    ]
}

#[test]
fn criterion_1_vc_golden() {
    let rooms = vc_rooms();
    let catalog: RoomCatalog = rooms
        .iter()
        .map(|&(label, capacity)| Room {
            label: label.into(),
            capacity,
            observations: "Card".into(),
        })
        .collect();
    let test = TestSession {
        label: "VC".into(),
        demand: 608,
        date: "06-IV".into(),
        slot: TimeSlot::new("Sa 14-16"),
        candidate_rooms: rooms.iter().map(|(l, _)| l.to_string()).collect(),
    };
    let config = ScheduleConfig {
        rate: 54,
        supervisor_rate: 650,
        ..ScheduleConfig::default()
    };
    let started = Instant::now();
    let s = schedule_test(&test, &catalog, &config).expect("VC is feasible");
    let elapsed = started.elapsed();

    let room = |label: &str| s.choices.iter().find(|c| c.room.label == label);
    let all_nine = s.choices.len() == 9;
    let seated = s.enrolled() == 608;
    let r224 = room("16-224").map(|c| (c.enrolled, c.proctors));
    let r223 = room("16-223").map(|c| c.enrolled);
    let crew = (s.total_demand(), s.supervisors);
    let fast = elapsed < Duration::from_secs(1);

    let checks = [
        ("nine rooms", all_nine),
        ("608 seated", seated),
        ("16-224 = (57, 2)", r224 == Some((57, 2))),
        ("crew 16 incl. 1 supervisor", crew == (16, 1)),
        ("16-223 = 54", r223 == Some(54)),
        ("< 1 s", fast),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    report(
        1,
        failed.is_empty(),
        &format!(
            "16-224 {r224:?}, 16-223 {r223:?}, crew {} ({} supervisors), {elapsed:.2?}; failed: {failed:?}",
            crew.0, crew.1
        ),
    );
}

#[test]
fn criterion_2_two_room_example() {
    let selected = choose_rooms(&[55, 55], 108, 54).unwrap();
    let dist = distribute_slack(&[55, 55], 108, 54);
    let proctors: u32 = dist.proctors.iter().sum();
    report(
        2,
        selected == [true, true] && dist.enrolled == [54, 54] && proctors == 2,
        &format!("enrolled {:?}, proctors {proctors}", dist.enrolled),
    );
}

#[test]
fn criterion_3_knapsack_oracle() {
    let mut rng = StdRng::seed_from_u64(3);
    let started = Instant::now();
    let mut mismatches = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=14);
        let caps: Vec<u32> = (0..n).map(|_| rng.gen_range(20..=120)).collect();
        let total: u32 = caps.iter().sum();
        let demand = rng.gen_range(0..=total);
        let oracle = brute_force_rooms(&caps, demand, 54).unwrap().unwrap();
        let chosen = choose_rooms(&caps, demand, 54).unwrap();
        let seats: u32 = caps
            .iter()
            .zip(&chosen)
            .filter(|p| *p.1)
            .map(|p| *p.0)
            .sum();
        let cost: u64 = caps
            .iter()
            .zip(&chosen)
            .filter(|p| *p.1)
            .map(|p| u64::from(room_weight(*p.0, 54)))
            .sum();
        if cost != oracle.objective || seats < demand {
            mismatches += 1;
        }
    }
    let elapsed = started.elapsed();
    report(
        3,
        mismatches == 0 && elapsed < Duration::from_secs(30),
        &format!("500 instances, {mismatches} mismatches, {elapsed:.2?}"),
    );
}

fn random_equity_instance(rng: &mut StdRng) -> (AvailabilityMatrix, DemandVector, Vec<u32>) {
    let p = rng.gen_range(1..=8);
    let t = rng.gen_range(1..=4);
    let groups = rng.gen_range(1..=t);
    let group_of: Vec<usize> = (0..t)
        .map(|k| {
            if k < groups {
                k
            } else {
                rng.gen_range(0..groups)
            }
        })
        .collect();
    let slot_groups = (0..groups)
        .map(|g| SlotGroup {
            date: format!("{:02}-V", g + 1),
            slot: TimeSlot::new("Mo 08-10"),
            tests: (0..t).filter(|&k| group_of[k] == g).collect(),
        })
        .collect();
    let avail = AvailabilityMatrix {
        tas: (1..=p).map(|i| format!("TA {i}")).collect(),
        tests: (1..=t).map(|i| format!("T{i}")).collect(),
        cells: (0..p)
            .map(|_| (0..t).map(|_| rng.gen_bool(0.8)).collect())
            .collect(),
        slot_groups,
    };
    let demands = DemandVector {
        per_test: (0..t).map(|_| rng.gen_range(0..=3)).collect(),
    };
    let loads = (0..p).map(|_| rng.gen_range(0..=5)).collect();
    (avail, demands, loads)
}

/// Availability, exact demand and one test per slot group.
fn assignment_is_valid(a: &AssignmentMatrix, avail: &AvailabilityMatrix, d: &DemandVector) -> bool {
    let p_count = avail.tas.len();
    let demand_ok = (0..avail.tests.len())
        .all(|t| (0..p_count).filter(|&p| a.cells[p][t]).count() as u32 == d.per_test[t]);
    let avail_ok =
        (0..p_count).all(|p| (0..avail.tests.len()).all(|t| !a.cells[p][t] || avail.cells[p][t]));
    let exclusive = avail
        .slot_groups
        .iter()
        .all(|g| (0..p_count).all(|p| g.tests.iter().filter(|&&t| a.cells[p][t]).count() <= 1));
    demand_ok && avail_ok && exclusive
}

#[test]
fn criterion_4_equity_oracle() {
    let mut rng = StdRng::seed_from_u64(4);
    let started = Instant::now();
    let (mut mismatches, mut invalid, mut infeasible) = (0, 0, 0);
    for _ in 0..500 {
        let (avail, demands, loads) = random_equity_instance(&mut rng);
        let ctx = EquityContext::new(loads.clone(), &demands).unwrap();
        let oracle = brute_force_equity(&avail, &demands, &loads).unwrap();
        match (solve_equity(&avail, &demands, &ctx), oracle) {
            (Ok(a), Some(o)) => {
                if a.bound != o.bound {
                    mismatches += 1;
                }
                if !assignment_is_valid(&a, &avail, &demands) {
                    invalid += 1;
                }
            }
            (Err(PersonnelError::Infeasible { .. }), None) => infeasible += 1,
            _ => mismatches += 1,
        }
    }
    let elapsed = started.elapsed();
    report(
        4,
        mismatches == 0 && invalid == 0 && elapsed < Duration::from_secs(60),
        &format!(
            "500 instances ({infeasible} infeasible), {mismatches} bound mismatches, {invalid} invalid, {elapsed:.2?}"
        ),
    );
}

#[test]
fn criterion_5_slack_priority() {
    let p = [
        slack_priority(109, 54),
        slack_priority(55, 54),
        slack_priority(56, 54),
    ];
    let dist = distribute_slack(&[109, 56], 163, 54);
    report(
        5,
        p == [1, 1, 2] && dist.enrolled[0] == 108 && dist.proctors == [2, 2],
        &format!(
            "priorities {p:?}, enrolled {:?}, proctors {:?}",
            dist.enrolled, dist.proctors
        ),
    );
}

const TABLE_LOG: &str = "\
Name,Cell,email,ID,Experience,Level,\"ODE, 04-II\",Total
TA 1,C 1,1@m.co,ID 1,1,Undergraduate,,0
TA 2,C 2,2@m.co,ID 2,2,Undergraduate,1,1
TA 3,C 3,3@m.co,ID 3,1,Undergraduate,1,1
TA 4,C 4,4@m.co,ID 4,1,Undergraduate,1,1
TA 5,C 5,5@m.co,ID 5,2,Undergraduate,1,1
TA 6,C 6,6@m.co,ID 6,2,Postgraduate,,0
";

#[test]
fn criterion_6_log_update() {
    let log = parse_proctor_log(TABLE_LOG).unwrap();
    let avg = ScheduledTest {
        test: TestSession {
            label: "AVG".into(),
            demand: 150,
            date: "04-III".into(),
            slot: TimeSlot::new("Mo 10-12"),
            candidate_rooms: vec![],
        },
        choices: vec![],
        supervisors: 0,
    };
    let assignment = AssignmentMatrix {
        tas: log.entries.iter().map(|e| e.name.clone()).collect(),
        tests: vec!["AVG".into()],
        cells: (1..=6).map(|i| vec![i % 2 == 1]).collect(),
        bound: 0,
    };
    let updated = update_log(&log, &assignment, std::slice::from_ref(&avg)).unwrap();
    let totals: Vec<u32> = updated.entries.iter().map(LogEntry::total).collect();
    report(
        6,
        totals == [1, 1, 2, 1, 2, 0]
            && updated.events.last().map(String::as_str) == Some("AVG, 04-III"),
        &format!("totals {totals:?}, events {:?}", updated.events),
    );
}

fn choice(label: &str, envelope: u32, capacity: u32, enrolled: u32, proctors: u32) -> RoomChoice {
    RoomChoice {
        room: Room {
            label: label.into(),
            capacity,
            observations: "Card".into(),
        },
        selected: true,
        enrolled,
        proctors,
        envelope,
        slack: capacity - enrolled,
    }
}

fn session(label: &str, choices: Vec<RoomChoice>, supervisors: u32) -> ScheduledTest {
    ScheduledTest {
        test: TestSession {
            label: label.into(),
            demand: choices.iter().map(|c| c.enrolled).sum(),
            date: "06-IV".into(),
            slot: TimeSlot::new("Sa 14-16"),
            candidate_rooms: choices.iter().map(|c| c.room.label.clone()).collect(),
        },
        choices,
        supervisors,
    }
}

#[test]
fn criterion_7_crew_pairing() {
    let sorted = session(
        "VC",
        vec![
            choice("16-223", 1, 63, 63, 2),
            choice("46-209", 2, 50, 50, 1),
            choice("46-307", 3, 80, 80, 2),
        ],
        0,
    );
    let frame = expand_positions(&sorted);
    let order: Vec<(&str, u32, u32, u32)> = frame
        .rows
        .iter()
        .map(|r| (r.room.as_str(), r.proctors, r.position, r.students))
        .collect();
    let order_ok = order
        == [
            ("46-209", 1, 1, 50),
            ("46-307", 2, 1, 80),
            ("16-223", 2, 1, 63),
            ("46-307", 2, 2, 80),
            ("16-223", 2, 2, 63),
        ];

    let vc = session(
        "VC",
        vec![
            choice("46-210", 1, 52, 52, 1),
            choice("21-314", 2, 79, 79, 2),
            choice("16-223", 3, 63, 53, 2),
            choice("46-209", 4, 50, 50, 1),
            choice("46-307", 5, 80, 80, 2),
            choice("21-307", 6, 52, 52, 1),
            choice("16-224", 7, 72, 57, 2),
            choice("21-320", 8, 79, 79, 2),
            choice("41-103", 9, 106, 106, 2),
        ],
        1,
    );
    let mut crew: Vec<Assignee> = [17, 25]
        .iter()
        .map(|n| Assignee {
            name: format!("Lec {n}"),
            cell: format!("C {n}00"),
            email: format!("Lec{n}@m.co"),
            experience: 10,
            level: CrewLevel::Lecturer,
        })
        .collect();
    for (i, n) in [4, 7, 20, 23, 24, 28, 41, 46, 48, 55, 59, 63, 65, 67]
        .iter()
        .enumerate()
    {
        crew.push(Assignee {
            name: format!("TA {n}"),
            cell: format!("C {n}"),
            email: format!("{n}@m.co"),
            experience: (i as u32 * 7) % 5,
            level: if i % 5 == 4 {
                CrewLevel::Postgraduate
            } else {
                CrewLevel::Undergraduate
            },
        });
    }
    let rows = organize_crew(&vc, &crew, SeniorityOrder::LecturersFirst).unwrap();
    let lecturers_single = rows.iter().all(|r| match (&r.post, r.assignee.level) {
        (Post::Room { proctors, .. }, CrewLevel::Lecturer) => *proctors == 1,
        _ => true,
    });
    let supervisor_ok = rows.iter().any(|r| {
        matches!(r.post, Post::Supervisor(1))
            && r.assignee.level == CrewLevel::Undergraduate
            && r.assignee.name.starts_with("TA ")
    });
    let bijection = {
        let mut names: Vec<&str> = rows.iter().map(|r| r.assignee.name.as_str()).collect();
        names.sort();
        names.dedup();
        names.len() == crew.len() && rows.len() == crew.len()
    };
    report(
        7,
        order_ok && lecturers_single && supervisor_ok && bijection,
        &format!(
            "sorted order {}, lecturers in single rooms {lecturers_single}, undergraduate supervisor {supervisor_ok}, bijection {bijection}",
            if order_ok { "matches" } else { "differs" }
        ),
    );
}

fn example_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/example")
}

fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut files = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                files.insert(
                    path.strip_prefix(root).unwrap().to_path_buf(),
                    fs::read(&path).unwrap(),
                );
            }
        }
    }
    files
}

#[test]
fn criterion_8_determinism() {
    let runs: Vec<_> = (0..2)
        .map(|_| {
            let out = tempfile::tempdir().unwrap();
            let config = ScheduleConfig {
                input_dir: example_dir(),
                output_dir: out.path().to_path_buf(),
                ..ScheduleConfig::default()
            };
            run_pipeline(&config).expect("example bundle schedules");
            let files = tree(out.path());
            (out, files)
        })
        .collect();
    let (a, b) = (&runs[0].1, &runs[1].1);
    report(
        8,
        !a.is_empty() && a == b,
        &format!("{} files per run, identical {}", a.len(), a == b),
    );
}

fn median_dp_time(rng: &mut StdRng, n: usize) -> Duration {
    let mut times: Vec<Duration> = (0..7)
        .map(|_| {
            let caps: Vec<u32> = (0..n).map(|_| rng.gen_range(20..=120)).collect();
            let demand = (caps.iter().sum::<u32>() as f64 * 0.7) as u32;
            let started = Instant::now();
            std::hint::black_box(choose_rooms(&caps, demand, 54));
            started.elapsed()
        })
        .collect();
    times.sort();
    times[times.len() / 2]
}

#[test]
fn criterion_9_complexity_smoke() {
    let mut rng = StdRng::seed_from_u64(9);
    median_dp_time(&mut rng, 100);
    let small = median_dp_time(&mut rng, 400);
    let large = median_dp_time(&mut rng, 800);
    let ratio = large.as_secs_f64() / small.as_secs_f64().max(1e-9);

    let caps: Vec<u32> = (0..10_000).map(|_| rng.gen_range(20..=120)).collect();
    let demand = caps.iter().sum::<u32>() - 10_000;
    let started = Instant::now();
    let dist = distribute_slack(&caps, demand, 54);
    let slack_time = started.elapsed();

    let choices: Vec<RoomChoice> = caps
        .iter()
        .zip(&dist.enrolled)
        .zip(&dist.proctors)
        .enumerate()
        .map(|(i, ((&c, &e), &p))| choice(&format!("R{i:05}"), i as u32 + 1, c, e, p))
        .collect();
    let big = session("BIG", choices, 0);
    let started = Instant::now();
    let frame = expand_positions(&big);
    let sort_time = started.elapsed();
    assert_eq!(frame.rows.len() as u32, big.room_proctors());

    report(
        9,
        ratio <= 16.0 && slack_time < Duration::from_millis(10) && sort_time < Duration::from_millis(10),
        &format!(
            "DP N=400 {small:.2?}, N=800 {large:.2?}, ratio {ratio:.2}; N=10000 slack {slack_time:.2?}, position sort {sort_time:.2?}"
        ),
    );
}
