#include "regula/scenarios.hpp"

namespace regula {

namespace {

// The fixture texts are stored byte-exact: tests compare lines across
// protocol pairs, so edits here are observable.

const char* kPaymentProtocol = R"(# Payment before delivery, with two ways to pay.
protocol payment
roles buyer, seller
action pay-by-cash by buyer means paid
action pay-by-credit-card by buyer means paid
action send-goods by seller means sent
constraint pay-first severity medium : paid before sent
)";

const char* kPaymentCashProtocol = R"(# The same exchange with the card option dropped.
protocol payment-cash
roles buyer, seller
action pay-by-cash by buyer means paid
action send-goods by seller means sent
constraint pay-first severity medium : paid before sent
)";

const char* kCashThenSend = R"(buyer pay-by-cash
seller send-goods
)";

const char* kCardThenSend = R"(buyer pay-by-credit-card
seller send-goods
)";

const char* kSendThenCash = R"(seller send-goods
buyer pay-by-cash
)";

const char* kRetireFirst = R"(# Retiring the order norm first makes the reversed order legal.
!retire pay-first
seller send-goods
buyer pay-by-cash
)";

const char* kTrainProtocol = R"(# Ticket punching on a regional train.
protocol train-ticket
roles traveler, conductor
action buy-ticket by traveler means ticket creates c-travel
action punch-ticket by traveler means punch
action board-travel by traveler means travel
commitment c-travel : C(traveler, conductor, top, achieve travel)
constraint punch-first severity high : punch before travel
)";

const char* kTrainPrefix = R"(traveler buy-ticket
)";

const char* kInsuranceProcedureProtocol =
    R"(# Post-procedure settlement between an insurer, a surgeon and a patient.
protocol insurance-procedure
roles ins, surgeon, patient
action underwrite by ins means policy creates c-pay creates c-settle creates c-bill
action undergo-procedure by patient means procedure
action send-bill by surgeon means bill
action pay-surgeon by ins means pay
commitment c-pay : C(ins, surgeon, achieve bill and procedure before bill, achieve pay)
commitment c-settle : C(ins, patient, top, bill before pay and achieve pay)
commitment c-bill : C(surgeon, ins, top, achieve bill)
)";

const char* kInsuranceProcedureNosupportProtocol =
    R"(# The settlement fixture with the surgeon's billing commitment dropped.
protocol insurance-procedure-nosupport
roles ins, surgeon, patient
action underwrite by ins means policy creates c-pay creates c-settle
action undergo-procedure by patient means procedure
action send-bill by surgeon means bill
action pay-surgeon by ins means pay
commitment c-pay : C(ins, surgeon, achieve bill and procedure before bill, achieve pay)
commitment c-settle : C(ins, patient, top, bill before pay and achieve pay)
)";

const char* kInsuranceFull = R"(ins underwrite
patient undergo-procedure
surgeon send-bill
ins pay-surgeon
)";

const char* kInsuranceExpire = R"(# Billing before the procedure leaves c-pay's antecedent unmet.
ins underwrite
surgeon send-bill
patient undergo-procedure
)";

const char* kInsuranceViolate = R"(# The insurer never pays after the bill arrives in order.
ins underwrite
patient undergo-procedure
surgeon send-bill
)";

const char* kInsuranceApprovalProtocol =
    R"(# Reimbursement owed once approval precedes the procedure.
protocol insurance-approval
roles insurer, patient
action enroll by patient means enrolled creates c-reimburse
action grant-approval by insurer means approval
action undergo-procedure by patient means procedure
action reimburse by insurer means reimbursed
commitment c-reimburse : C(insurer, patient, achieve procedure and approval before procedure, achieve reimbursed)
)";

const char* kInsuranceApprovalHappy = R"(patient enroll
insurer grant-approval
patient undergo-procedure
insurer reimburse
)";

const char* kInsuranceApprovalSkipped = R"(# Procedure without prior approval: nothing becomes owed.
patient enroll
patient undergo-procedure
insurer grant-approval
)";

const char* kContractNetProtocol = R"(# One-shot contract-net round with delivery duties.
protocol contract-net
roles initiator, participant
action send-cfp by initiator means cfp
action propose by participant means proposal
action accept-proposal by initiator means accepted creates c-perform
action do-task by participant means done
action send-result by participant means result-sent
commitment c-perform : C(participant, initiator, achieve accepted, achieve done and done before result-sent)
constraint cfp-first severity low : cfp before proposal
constraint respond-to-cfp severity medium : cfp response proposal
constraint deliver-after-accept severity high : accepted before result-sent
)";

const char* kContractNetFull = R"(initiator send-cfp
participant propose
initiator accept-proposal
participant do-task
participant send-result
)";

const char* kContractNetEager = R"(# Results sent before any proposal was accepted.
initiator send-cfp
participant propose
participant do-task
participant send-result
)";

const char* kMifidProtocol = R"(# Stylized investment-advice duties; a stand-in inventory, not a
# transcription of any regulation text.
protocol mifid-advice
roles bank, client
action request-advice by client means requested
action profile-client by bank means profiled creates c-suit
action recommend by bank means recommended
action agree by client means agreed
action execute-order by bank means executed
commitment c-suit : C(bank, client, top, profiled before recommended and achieve recommended)
constraint know-your-customer severity high : profiled before executed
constraint advice-on-request severity low : requested before recommended
constraint consent severity medium : agreed before executed
)";

const char* kMifidAdvice = R"(client request-advice
bank profile-client
bank recommend
client agree
bank execute-order
)";

std::vector<Scenario> make_scenarios() {
  return {
      {"payment",
       "buyer must pay before the seller ships; two payment routes",
       {{"payment.protocol", kPaymentProtocol},
        {"cash-then-send.trace", kCashThenSend},
        {"card-then-send.trace", kCardThenSend},
        {"send-then-cash.trace", kSendThenCash},
        {"retire-first.trace", kRetireFirst}}},
      {"payment-cash",
       "the payment fixture minus the card action; the constraint line is unchanged",
       {{"payment-cash.protocol", kPaymentCashProtocol},
        {"cash-then-send.trace", kCashThenSend},
        {"send-then-cash.trace", kSendThenCash}}},
      {"train-ticket",
       "punch-before-travel norm against a commitment to travel",
       {{"train-ticket.protocol", kTrainProtocol}, {"prefix.trace", kTrainPrefix}}},
      {"insurance-procedure",
       "insurer pays the surgeon once the procedure precedes the bill",
       {{"insurance-procedure.protocol", kInsuranceProcedureProtocol},
        {"full.trace", kInsuranceFull},
        {"expire.trace", kInsuranceExpire},
        {"violate.trace", kInsuranceViolate}}},
      {"insurance-procedure-nosupport",
       "the settlement fixture without the surgeon's billing commitment",
       {{"insurance-procedure-nosupport.protocol", kInsuranceProcedureNosupportProtocol},
        {"full.trace", kInsuranceFull},
        {"violate.trace", kInsuranceViolate}}},
      {"insurance-approval",
       "reimbursement owed only when approval precedes the procedure",
       {{"insurance-approval.protocol", kInsuranceApprovalProtocol},
        {"happy.trace", kInsuranceApprovalHappy},
        {"skipped.trace", kInsuranceApprovalSkipped}}},
      {"contract-net",
       "call for proposals, acceptance, task performance and delivery duties",
       {{"contract-net.protocol", kContractNetProtocol},
        {"full.trace", kContractNetFull},
        {"eager.trace", kContractNetEager}}},
      {"mifid-advice",
       "stylized advice-suitability duties (stand-in inventory)",
       {{"mifid-advice.protocol", kMifidProtocol}, {"advice.trace", kMifidAdvice}}},
  };
}

}  // namespace

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> all = make_scenarios();
  return all;
}

const Scenario* find_scenario(std::string_view name) {
  for (const Scenario& s : scenarios())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace regula
