from .chain import (IdentityReport, MarkovModel, RateReport, block_entropy, block_joint, block_mutual_information,
                    closed_classes, entropy_rate, entropy_rate_estimate, excess_entropy_estimate,
                    excess_entropy_from_convergence, identity_checks, markov_model, multi_information_rate, pir_rate,
                    predictive_information, random_chain, rate_report, residual_rate, sample_sequence,
                    stationary_distribution, symmetric_chain)
