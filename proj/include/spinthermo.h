/* C interface to the spin-temperature relaxation simulator.
 *
 * Every entry point returns ST_OK on success or an error code; the
 * per-thread message for the last failure is available through
 * st_last_error(). Handles are opaque and must be released with
 * st_sim_destroy(); strings returned through out-parameters must be
 * released with st_string_free().
 */
#ifndef SPINTHERMO_H
#define SPINTHERMO_H

#ifdef __cplusplus
extern "C" {
#endif

#define ST_OK 0
#define ST_ERR_CONFIG 2   /* invalid configuration or arguments */
#define ST_ERR_NUMERIC 3  /* numerical failure during a computation */

/* Message for the most recent failure on this thread ("" if none). The
 * pointer stays valid until the next failing call on the same thread. */
const char* st_last_error(void);

void st_string_free(char* s);

/* ---- one-shot runners ------------------------------------------------- */

/* Integrates the relaxation scenario described by the JSON document and
 * writes the trajectory CSV to out_csv_path (stdout when NULL). When
 * summary_json_out is non-NULL it receives a JSON summary (terminal
 * temperatures, equilibrium-temperature oracle, fade and equalization
 * times); free it with st_string_free. */
int st_relax(const char* config_json, const char* out_csv_path,
             char** summary_json_out);

/* Pairwise concurrence over an (nz x nd) grid of (beta_z, beta_d) up to
 * (zmax, dmax), written as long-format CSV. overlay != 0 appends the
 * diagonal cut and the scenario's relaxation path; ne_surface != 0
 * evaluates on the non-equilibrium operator instead of the
 * quasi-equilibrium state. */
int st_surface(const char* config_json, int nz, int nd, double zmax,
               double dmax, int overlay, int ne_surface,
               const char* out_csv_path);

/* Writes one operator of a built-in geometry ("chain", "ring",
 * "rectangle") as sparse CSV (row,col,re,im; entries with magnitude above
 * 1e-14). op_name is one of Hz, Hdd, Hd, Hnd, H, K. */
int st_dump(const char* geometry, double ratio, const char* op_name,
            const char* out_csv_path);

/* ---- handle-based interface ------------------------------------------ */

typedef struct st_sim st_sim;

/* Builds the operators for the scenario described by config_json
 * (NULL or "" selects the defaults). */
int st_sim_create(const char* config_json, st_sim** out);
void st_sim_destroy(st_sim* sim);

/* Dipolar energy scale omega_d of the scenario's geometry. */
double st_sim_omega_d(const st_sim* sim);

/* Number of spins and of spin pairs. */
int st_sim_n_spins(const st_sim* sim);
int st_sim_n_pairs(const st_sim* sim);

/* Zeeman and dipolar energies of the quasi-equilibrium state. */
int st_sim_energies(st_sim* sim, double beta_z, double beta_d, double* e_z,
                    double* e_d);

/* Average energy flux <K> under the non-equilibrium operator. */
int st_sim_flux(st_sim* sim, double beta_z, double beta_d, double* flux);

/* Right-hand side of the temperature-equalization ODE. */
int st_sim_rhs(st_sim* sim, double beta_z, double beta_d, double* dbeta_z,
               double* dbeta_d);

/* Concurrence of every pair, ordered (1,2), (1,3), ..., (N-1,N), on the
 * quasi-equilibrium state (ne == 0) or the non-equilibrium operator
 * (ne != 0). out must hold st_sim_n_pairs values. */
int st_sim_concurrence(st_sim* sim, double beta_z, double beta_d, int ne,
                       double* out);

/* Common inverse temperature reached from the scenario's initial state. */
int st_sim_equilibrium_beta(st_sim* sim, double* beta);

#ifdef __cplusplus
}
#endif

#endif /* SPINTHERMO_H */
