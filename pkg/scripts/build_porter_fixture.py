#!/usr/bin/env python3
"""Regenerate tests/data/porter_vocab.tsv: a 1,000-word English vocabulary
with expected stems computed by the independent reference stemmer in
tests/reference_porter.py.

Run from the repository root:  python3 scripts/build_porter_fixture.py
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from reference_porter import reference_stem  # noqa: E402

# suffix-rich, news-flavored vocabulary: ~125 word families
FAMILIES = """
report reports reported reporting reporter reporters
govern governs governed governing government governments governor governors governance
elect elects elected electing election elections elective electoral electorate
investigate investigates investigated investigating investigation investigations investigative investigator investigators
announce announces announced announcing announcement announcements
develop develops developed developing development developments developer developers
nation national nationally nations nationalism nationalize nationalization
politics political politically politician politicians politicize
economy economies economic economical economically economist economists
finance finances financed financing financial financially
industry industries industrial industrialize industrialization industrious
organize organizes organized organizing organization organizations organizer organizers
administer administration administrations administrative administrator administrators
compete competes competed competing competition competitions competitive competitiveness competitor competitors
produce produces produced producing production productions productive productivity producer producers
consume consumes consumed consuming consumption consumer consumers
invest invests invested investing investment investments investor investors
regulate regulates regulated regulating regulation regulations regulatory regulator regulators
legislate legislation legislative legislature legislator legislators
negotiate negotiates negotiated negotiating negotiation negotiations negotiator negotiators
communicate communicates communicated communicating communication communications communicative
educate educates educated educating education educational educator educators
science sciences scientist scientists scientific scientifically
technology technologies technological technologically technologist
innovate innovates innovated innovating innovation innovations innovative innovator innovators
create creates created creating creation creations creative creativity creator creators
decide decides decided deciding decision decisions decisive decisiveness
argue argues argued arguing argument arguments argumentative
analyze analyzes analyzed analyzing analysis analyst analysts analytical
conclude concludes concluded concluding conclusion conclusions conclusive
describe describes described describing description descriptions descriptive
explain explains explained explaining explanation explanations explanatory
predict predicts predicted predicting prediction predictions predictive predictable
observe observes observed observing observation observations observer observers
measure measures measured measuring measurement measurements measurable
calculate calculates calculated calculating calculation calculations calculator calculators
estimate estimates estimated estimating estimation estimations
evaluate evaluates evaluated evaluating evaluation evaluations evaluative
demonstrate demonstrates demonstrated demonstrating demonstration demonstrations demonstrative demonstrators
protest protests protested protesting protester protesters
demand demands demanded demanding
support supports supported supporting supporter supporters supportive
oppose opposes opposed opposing opposition oppositional
contradict contradicts contradicted contradicting contradiction contradictions contradictory
confirm confirms confirmed confirming confirmation confirmations
deny denies denied denying denial denials
accuse accuses accused accusing accusation accusations accusatory
defend defends defended defending defense defenses defensive defender defenders
prosecute prosecutes prosecuted prosecuting prosecution prosecutions prosecutor prosecutors
testify testifies testified testifying testimony testimonies
witness witnesses witnessed witnessing
justice justices justifiable justification justifications justified justifies justify justifying
appeal appeals appealed appealing
settle settles settled settling settlement settlements
resolve resolves resolved resolving resolution resolutions
dispute disputes disputed disputing disputable
conflict conflicts conflicted conflicting conflation conflated
crisis crises critical critically criticize criticizes criticized criticizing criticism criticisms critic critics
emergency emergencies emergent emergence emerging emerged emerges emerge
disaster disasters disastrous disastrously
recover recovers recovered recovering recovery recoveries recoverable
rebuild rebuilds rebuilding rebuilt
restore restores restored restoring restoration restorations restorative
relocate relocates relocated relocating relocation relocations
evacuate evacuates evacuated evacuating evacuation evacuations
contaminate contaminates contaminated contaminating contamination contaminants
pollute pollutes polluted polluting pollution pollutant pollutants
environment environments environmental environmentally environmentalist environmentalists
conserve conserves conserved conserving conservation conservative conservatives
sustain sustains sustained sustaining sustainable sustainability
energy energies energetic energetically energize
agriculture agricultural agriculturally
transport transports transported transporting transportation transporter
infrastructure infrastructures
construct constructs constructed constructing construction constructions constructive constructor constructors
engineer engineers engineered engineering
operate operates operated operating operation operations operational operator operators
maintain maintains maintained maintaining maintenance
inspect inspects inspected inspecting inspection inspections inspector inspectors
certify certifies certified certifying certification certifications
approve approves approved approving approval approvals
reject rejects rejected rejecting rejection rejections
propose proposes proposed proposing proposal proposals
recommend recommends recommended recommending recommendation recommendations
implement implements implemented implementing implementation implementations
achieve achieves achieved achieving achievement achievements achievable
improve improves improved improving improvement improvements
increase increases increased increasing increasingly
reduce reduces reduced reducing reduction reductions
expand expands expanded expanding expansion expansions expansive
accelerate accelerates accelerated accelerating acceleration
collaborate collaborates collaborated collaborating collaboration collaborations collaborative collaborator collaborators
participate participates participated participating participation participants participant participatory
contribute contributes contributed contributing contribution contributions contributor contributors
distribute distributes distributed distributing distribution distributions distributor distributors
allocate allocates allocated allocating allocation allocations
fund funds funded funding
budget budgets budgeted budgeting budgetary
tax taxes taxed taxing taxation taxable taxpayer taxpayers
salary salaries employ employs employed employing employment employer employers employee employees
unemployment labor labors labored laboring laborious
union unions unionize unionized
strike strikes striking
wage wages waged waging
inflation inflationary deflation
recession recessions depress depresses depressed depressing depression depressions
stabilize stabilizes stabilized stabilizing stability stabilization
currency currencies monetary monetize
trade trades traded trading trader traders
export exports exported exporting exporter exporters
import imports imported importing importer importers
tariff tariffs sanction sanctions sanctioned sanctioning
embargo embargoes diplomat diplomats diplomatic diplomacy
treaty treaties alliance alliances allied allies
military militaries militarize militarization
security securities secure secured securing securely
intelligence intelligent intelligently
surveillance surveil
terror terrorism terrorist terrorists terrorize
insurgent insurgents insurgency
refugee refugees migrate migrates migrated migrating migration migrations migrant migrants migratory
border borders bordered bordering
citizen citizens citizenship
immigrant immigrants immigration
asylum humanitarian
violence violent violently nonviolent
casualty casualties injure injures injured injuring injury injuries injurious
hospital hospitals hospitalize hospitalized hospitalization
medicine medicines medical medically medicate medicated medication medications
vaccine vaccines vaccinate vaccinated vaccinating vaccination vaccinations
infect infects infected infecting infection infections infectious
epidemic epidemics pandemic pandemics
quarantine quarantined symptom symptoms symptomatic
diagnose diagnoses diagnosed diagnosing diagnosis diagnostic
treat treats treated treating treatment treatments treatable
cure cures cured curing curable
prevent prevents prevented preventing prevention preventive preventable
research researches researched researching researcher researchers
experiment experiments experimented experimenting experimental experimentally
discover discovers discovered discovering discovery discoveries
publish publishes published publishing publisher publishers publication publications
journal journals journalism journalist journalists journalistic
editor editors editorial editorials edit edits edited editing edition editions
broadcast broadcasts broadcasting broadcaster broadcasters
interview interviews interviewed interviewing interviewer interviewers
statement statements misstatement
evidence evidenced evident evidently
source sources sourced sourcing
verify verifies verified verifying verification verifiable
accurate accurately accuracy inaccurate inaccuracies
reliable reliably reliability unreliable
credible credibly credibility incredible
transparent transparently transparency
accountable accountability
responsible responsibly responsibility responsibilities
independent independently independence
objective objectively objectivity
bias biased biases biasing
misinform misinforms misinformed misinformation
disinform disinformation
propaganda propagandist
manipulate manipulates manipulated manipulating manipulation manipulative
deceive deceives deceived deceiving deception deceptive
fabricate fabricates fabricated fabricating fabrication fabrications
exaggerate exaggerates exaggerated exaggerating exaggeration exaggerations
sensational sensationalism sensationalize
controversy controversies controversial controversially
scandal scandals scandalous
corrupt corrupts corrupted corrupting corruption corruptible
bribe bribes bribed bribing bribery
fraud frauds fraudulent fraudulently
launder launders laundered laundering
conspire conspires conspired conspiring conspiracy conspiracies conspirator conspirators
allege alleges alleged alleging allegation allegations allegedly
suspect suspects suspected suspecting suspicion suspicions suspicious suspiciously
arrest arrests arrested arresting
detain detains detained detaining detention detentions
convict convicts convicted convicting conviction convictions
sentence sentences sentenced sentencing
penalty penalties penalize penalized
imprison imprisons imprisoned imprisoning imprisonment
parole paroled probation probationary
rehabilitate rehabilitates rehabilitated rehabilitation
derail derails derailed derailing derailment derailments
collide collides collided colliding collision collisions
capsize capsized wreck wrecks wrecked wreckage
explode explodes exploded exploding explosion explosions explosive explosives
ignite ignites ignited igniting ignition
extinguish extinguished firefighter firefighters
rescue rescues rescued rescuing rescuer rescuers
survive survives survived surviving survival survivor survivors
victim victims victimize victimized
mourn mourns mourned mourning mourner mourners
memorial memorials commemorate commemoration
celebrate celebrates celebrated celebrating celebration celebrations celebratory
champion champions championed championship championships
tournament tournaments qualify qualifies qualified qualifying qualification qualifications
compete athletic athletics athlete athletes
train trains trained training trainer trainers
coach coaches coached coaching
score scores scored scoring scorer scorers
defeat defeats defeated defeating
victory victories victorious triumphant
record records recorded recording recorder recorders
history histories historical historically historian historians
tradition traditions traditional traditionally traditionalist
culture cultures cultural culturally
society societies social socially societal
community communities communal
population populations populous populate populated
urban urbanize urbanization suburban rural
metropolitan municipal municipality municipalities
region regions regional regionally
territory territories territorial
province provinces provincial
federal federally federation federalism
constitution constitutions constitutional constitutionally unconstitutional
amendment amendments amend amends amended amending
ratify ratifies ratified ratifying ratification
veto vetoes vetoed vetoing
repeal repeals repealed repealing
enact enacts enacted enacting enactment
enforce enforces enforced enforcing enforcement enforceable
comply complies complied complying compliance compliant
violate violates violated violating violation violations violator violators
"""

CANONICAL_EXTRAS = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing
happy sky relational conditional rational digitizer operator feudalism
decisiveness hopefulness callousness formaliti triplicate formative formalize
electriciti electrical hopeful goodness revival allowance inference airliner
gyroscopic adjustable defensible irritant replacement adjustment dependent
adoption communism activate effective bowdlerize probate rate cease
generalizations oscillators roll controll
"""


def main():
    words = []
    seen = set()
    dropped = 0
    for token in (FAMILIES + CANONICAL_EXTRAS).split():
        w = token.strip().lower()
        if not w or not w.isalpha() or w in seen:
            continue
        seen.add(w)
        # the lexicon is chosen so re-stemming is stable; Porter is not
        # idempotent in general (e.g. decision -> decis -> deci)
        s = reference_stem(w)
        if reference_stem(s) != s:
            dropped += 1
            continue
        words.append(w)
    if len(words) < 1000:
        raise SystemExit(f"vocabulary too small: {len(words)} < 1000")
    words = words[:1000]

    out = ROOT / "tests" / "data" / "porter_vocab.tsv"
    lines = [f"{w}\t{reference_stem(w)}" for w in words]
    out.write_text("\n".join(lines) + "\n", "utf-8")
    print(f"wrote {len(words)} words to {out} ({dropped} non-idempotent words dropped)")


if __name__ == "__main__":
    main()
