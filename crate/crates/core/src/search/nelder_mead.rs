//! Derivative-free simplex descent with dimension-adaptive coefficients.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub max_iterations: usize,
    /// Stop once every vertex lies within this sup-norm distance of the best.
    pub step_tolerance: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

struct Coefficients {
    reflect: f64,
    expand: f64,
    contract: f64,
    shrink: f64,
}

impl Coefficients {
    fn for_dimension(d: usize) -> Self {
        let d = d.max(1) as f64;
        // Gao & Han's adaptive choice; reduces to the classic values at d = 2
        Coefficients {
            reflect: 1.0,
            expand: 1.0 + 2.0 / d,
            contract: 0.75 - 1.0 / (2.0 * d),
            shrink: 1.0 - 1.0 / d,
        }
    }
}

/// Minimizes `f` from `x0`. Non-finite objective values are treated as `+inf`.
pub fn minimize<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let d = x0.len();
    let mut eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    if d == 0 {
        let value = eval(x0);
        return Minimum {
            x: Vec::new(),
            value,
            iterations: 0,
            converged: true,
        };
    }
    let coef = Coefficients::for_dimension(d);

    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    vertices.push(x0.to_vec());
    for i in 0..d {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        vertices.push(v);
    }
    let mut values: Vec<f64> = vertices.iter().map(|v| eval(v)).collect();
    let mut order: Vec<usize> = (0..=d).collect();

    let mut centroid = vec![0.0; d];
    let mut trial = vec![0.0; d];
    let mut second = vec![0.0; d];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iterations {
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[d];
        let next_worst = order[d - 1];

        let diameter = vertices
            .iter()
            .flat_map(|v| v.iter().zip(&vertices[best]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if diameter < opts.step_tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for &i in &order[..d] {
            for (c, x) in centroid.iter_mut().zip(&vertices[i]) {
                *c += x;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= d as f64);

        let along = |t: f64, out: &mut Vec<f64>, worst_v: &[f64], centroid: &[f64]| {
            for ((o, c), w) in out.iter_mut().zip(centroid).zip(worst_v) {
                *o = c + t * (c - w);
            }
        };

        along(coef.reflect, &mut trial, &vertices[worst], &centroid);
        let reflected = eval(&trial);

        if reflected < values[best] {
            along(coef.reflect * coef.expand, &mut second, &vertices[worst], &centroid);
            let expanded = eval(&second);
            if expanded < reflected {
                vertices[worst].copy_from_slice(&second);
                values[worst] = expanded;
            } else {
                vertices[worst].copy_from_slice(&trial);
                values[worst] = reflected;
            }
            continue;
        }
        if reflected < values[next_worst] {
            vertices[worst].copy_from_slice(&trial);
            values[worst] = reflected;
            continue;
        }

        let (contracted, accept) = if reflected < values[worst] {
            // outside contraction
            along(coef.reflect * coef.contract, &mut second, &vertices[worst], &centroid);
            let v = eval(&second);
            (v, v <= reflected)
        } else {
            along(-coef.contract, &mut second, &vertices[worst], &centroid);
            let v = eval(&second);
            (v, v < values[worst])
        };
        if accept {
            vertices[worst].copy_from_slice(&second);
            values[worst] = contracted;
            continue;
        }

        let anchor = vertices[best].clone();
        for &i in &order[1..] {
            for (x, a) in vertices[i].iter_mut().zip(&anchor) {
                *x = a + coef.shrink * (*x - a);
            }
            values[i] = eval(&vertices[i]);
        }
    }

    let best = (0..=d).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    Minimum {
        x: vertices[best].clone(),
        value: values[best],
        iterations,
        converged,
    }
}
